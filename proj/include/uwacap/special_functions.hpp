// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_SPECIAL_FUNCTIONS_HPP
#define UWACAP_SPECIAL_FUNCTIONS_HPP

namespace uwacap {

// Error function, accurate to better than 1e-14 absolute over the real line.
// Maclaurin series for small arguments, Lentz continued-fraction evaluation
// of erfc for large ones. erf(-x) = -erf(x) holds exactly.
double erf_eval(double x);

} // namespace uwacap

#endif // UWACAP_SPECIAL_FUNCTIONS_HPP
