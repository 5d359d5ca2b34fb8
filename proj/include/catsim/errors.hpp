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

#include <stdexcept>

namespace catsim {

/// A computation would exceed its configured work budget; raised before any partial result exists.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A tree instance violates its structural contract (cycle, missing node, wrong widths).
class MalformedInstance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace catsim
