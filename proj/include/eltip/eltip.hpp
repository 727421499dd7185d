// Copyright 2026 The eltip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELTIP_ELTIP_HPP
#define ELTIP_ELTIP_HPP

#include "eltip/error.hpp"
#include "eltip/hamiltonian.hpp"
#include "eltip/overlap.hpp"
#include "eltip/problem.hpp"
#include "eltip/problem_io.hpp"
#include "eltip/report.hpp"
#include "eltip/spectral.hpp"
#include "eltip/transform.hpp"

#endif  // ELTIP_ELTIP_HPP
