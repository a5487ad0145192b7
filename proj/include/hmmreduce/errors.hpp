#pragma once

#include <stdexcept>
#include <string>

namespace hmmreduce {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};
struct NonStochastic : Error {
    using Error::Error;
};
struct NegativeEntry : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotContained : Error {
    using Error::Error;
};
struct ZeroOnSupport : Error {
    using Error::Error;
};
struct EmptyGenerators : Error {
    using Error::Error;
};
struct NotAnAlgebra : Error {
    using Error::Error;
};
struct DegenerateWeight : Error {
    using Error::Error;
};
struct UnsupportedCustomVector : Error {
    using Error::Error;
};
struct SymbolOutOfRange : Error {
    using Error::Error;
};
struct EnumerationCapExceeded : Error {
    using Error::Error;
};

}  // namespace hmmreduce
