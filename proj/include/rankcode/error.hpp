/**************************************************************************
 * error.hpp
 *
 * Copyright 2026 The rankcode Authors
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
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace rankcode {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RANKCODE_DEFINE_ERROR(Name)            \
    class Name : public Error {                \
    public:                                    \
        explicit Name(const std::string& what) \
            : Error(#Name ": " + what) { }     \
    }

RANKCODE_DEFINE_ERROR(InvalidParameter);
RANKCODE_DEFINE_ERROR(DivisionByZero);
RANKCODE_DEFINE_ERROR(SingularMatrix);
RANKCODE_DEFINE_ERROR(InvalidRank);
RANKCODE_DEFINE_ERROR(CoefficientOutOfRange);
RANKCODE_DEFINE_ERROR(KernelDimMismatch);
RANKCODE_DEFINE_ERROR(DegenerateLeadingCoefficient);
RANKCODE_DEFINE_ERROR(TooLarge);
RANKCODE_DEFINE_ERROR(ParseError);
RANKCODE_DEFINE_ERROR(DecodeFailure);

#undef RANKCODE_DEFINE_ERROR

} // namespace rankcode
