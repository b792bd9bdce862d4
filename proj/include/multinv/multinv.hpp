// Copyright 2026 The multinv Authors
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

// Umbrella header.

#pragma once

#include "multinv/analytic.hpp"
#include "multinv/clifford.hpp"
#include "multinv/convert.hpp"
#include "multinv/coxeter.hpp"
#include "multinv/dyadic.hpp"
#include "multinv/engines.hpp"
#include "multinv/gf2.hpp"
#include "multinv/graph.hpp"
#include "multinv/io.hpp"
#include "multinv/pauli.hpp"
#include "multinv/permutation.hpp"
#include "multinv/random.hpp"
#include "multinv/tableau.hpp"
#include "multinv/xstate.hpp"
