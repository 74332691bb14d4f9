/*
   Copyright 2026 The dtower Authors

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

#ifndef DTOWER_ERRORS_HPP
#define DTOWER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dtower {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// Operands from different fields.
class FieldMismatch : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

class DivisionByZero : public Error {
   public:
    using Error::Error;
};

/// A field or enumeration would exceed the configured size cap.
class CapExceeded : public Error {
   public:
    using Error::Error;
};

/// An identity the construction guarantees failed to hold.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace dtower

#endif  // DTOWER_ERRORS_HPP
