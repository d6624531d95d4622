/*
 * Copyright 2026 The dartr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

namespace dartr {

/// Gamma function for x > 0 by the Lanczos approximation (g = 7, nine
/// coefficients) with the reflection formula below 1/2. Relative error is
/// below 1e-13 on (0, 50]. Throws DomainError for x <= 0 or NaN.
double gamma_fn(double x);

}  // namespace dartr
