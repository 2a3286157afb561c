// Copyright 2026 The phasemap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHASEMAP_HPP_
#define PHASEMAP_HPP_

#include "phasemap/catalog.hpp"
#include "phasemap/cloning.hpp"
#include "phasemap/error.hpp"
#include "phasemap/hermitian.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/pmap.hpp"
#include "phasemap/positivity.hpp"
#include "phasemap/search.hpp"
#include "phasemap/trigpoly.hpp"

#endif  // PHASEMAP_HPP_
