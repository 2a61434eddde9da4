// Copyright 2026 The Authors.
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

#pragma once

#include "sciplan/belief.hpp"
#include "sciplan/categorical.hpp"
#include "sciplan/errors.hpp"
#include "sciplan/grid.hpp"
#include "sciplan/harness/benchmark.hpp"
#include "sciplan/harness/mission.hpp"
#include "sciplan/knowledge_net.hpp"
#include "sciplan/metrics.hpp"
#include "sciplan/planners/factory.hpp"
#include "sciplan/rng.hpp"
#include "sciplan/sampling.hpp"
#include "sciplan/sensing.hpp"
#include "sciplan/world.hpp"
