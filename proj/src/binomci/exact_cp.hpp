// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef BINOMCI_EXACT_CP_HPP
#define BINOMCI_EXACT_CP_HPP

#include "binomci/binom_core.hpp"
#include "binomci/interval.hpp"

namespace binomci {

inline constexpr double kDefaultTol = 1e-10;

/// Clopper-Pearson lower limit: 0 for k = 0, otherwise the unique
/// p in (0,1) with sum_{j<k} C(N,j) p^j (1-p)^(N-j) = 1 - delta/2,
/// located by bisection to absolute accuracy tol.
double cp_lower(const ConfidenceQuery& query, double tol = kDefaultTol);

/// Clopper-Pearson upper limit: 1 for k = N, otherwise the unique
/// p in (0,1) with sum_{j<=k} C(N,j) p^j (1-p)^(N-j) = delta/2.
double cp_upper(const ConfidenceQuery& query, double tol = kDefaultTol);

/// Both limits as an Interval.  Bisection brackets are seeded from the
/// explicit Massart limits, which provably enclose the exact roots;
/// if a seeded bracket fails to bracket (it never has in testing, see
/// bracket_fallbacks) the solver restarts from (0,1).
Interval cp_interval(const ConfidenceQuery& query, double tol = kDefaultTol);

/// Count of times the Massart-seeded bracket had to be abandoned for
/// the full (0,1) bracket.  Exposed so tests can assert it stays zero.
long cp_bracket_fallbacks();

}  // namespace binomci

#endif
