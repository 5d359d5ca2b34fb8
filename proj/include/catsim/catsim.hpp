/*
Copyright 2026 The catsim Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include "catsim/bench/metrics.hpp"
#include "catsim/bits.hpp"
#include "catsim/errors.hpp"
#include "catsim/gf/field.hpp"
#include "catsim/gf/pack.hpp"
#include "catsim/graph/encoding.hpp"
#include "catsim/reduction/content.hpp"
#include "catsim/reduction/driver.hpp"
#include "catsim/reduction/tree.hpp"
#include "catsim/tm/machine.hpp"
#include "catsim/tm/simulator.hpp"
#include "catsim/tree/cook_mertz.hpp"
#include "catsim/tree/extension.hpp"
#include "catsim/tree/instance.hpp"
#include "catsim/tree/meter.hpp"
#include "catsim/tree/naive.hpp"
