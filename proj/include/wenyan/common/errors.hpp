// SPDX-License-Identifier: Apache-2.0
//
// Error types shared across the toolkit. Every named failure mode gets its
// own type so callers (and tests) can catch precisely.

#pragma once

#include <stdexcept>
#include <string>

namespace wenyan {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WENYAN_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// corpus
WENYAN_DEFINE_ERROR(TextTooShort);
WENYAN_DEFINE_ERROR(SignatureMismatch);

// align / noising
WENYAN_DEFINE_ERROR(EmptyCorpus);
WENYAN_DEFINE_ERROR(SequenceTooShort);

// model
WENYAN_DEFINE_ERROR(SequenceTooLong);
WENYAN_DEFINE_ERROR(EmptyBatch);
WENYAN_DEFINE_ERROR(NoMaskedPositions);
WENYAN_DEFINE_ERROR(NonFiniteLoss);
WENYAN_DEFINE_ERROR(GraphReused);
WENYAN_DEFINE_ERROR(ShapeMismatch);

// eval
WENYAN_DEFINE_ERROR(LengthMismatch);
WENYAN_DEFINE_ERROR(EmptyInput);
WENYAN_DEFINE_ERROR(EmptySet);

// cli / io
WENYAN_DEFINE_ERROR(MissingArtifact);
WENYAN_DEFINE_ERROR(IoError);
WENYAN_DEFINE_ERROR(ParseError);
WENYAN_DEFINE_ERROR(ConfigError);

#undef WENYAN_DEFINE_ERROR

}  // namespace wenyan
