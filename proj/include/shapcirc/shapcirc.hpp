// Copyright 2026 The shapcirc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "shapcirc/circuit.hpp"
#include "shapcirc/coeffs.hpp"
#include "shapcirc/error.hpp"
#include "shapcirc/methods.hpp"
#include "shapcirc/numeric.hpp"
#include "shapcirc/oracle.hpp"
#include "shapcirc/probability.hpp"
#include "shapcirc/provenance.hpp"
#include "shapcirc/reductions.hpp"
#include "shapcirc/scores.hpp"
#include "shapcirc/structure.hpp"
#include "shapcirc/transform.hpp"
