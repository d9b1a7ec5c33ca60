// Copyright 2026 The uimpl authors
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

#include <stdexcept>
#include <string>

namespace uimpl {

// Error taxonomy shared by all modules. what() names the violated condition.
// Violated mathematical invariants are ValidationError subtypes; file-format
// problems are ParseError; the rest are resource or usage guards.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};
struct NonFinite : ValidationError {
    using ValidationError::ValidationError;
};
struct NonHermitian : ValidationError {
    using ValidationError::ValidationError;
};
struct NotPSD : ValidationError {
    using ValidationError::ValidationError;
};
struct DimMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct TailMassTooLarge : ValidationError {
    using ValidationError::ValidationError;
};
struct ParseError : Error {
    using Error::Error;
};
struct ScaleTooLarge : Error {
    using Error::Error;
};
struct BudgetZero : Error {
    using Error::Error;
};

}  // namespace uimpl
