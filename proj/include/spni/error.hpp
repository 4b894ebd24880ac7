#ifndef SPNI_ERROR_HPP
#define SPNI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spni {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller handed us something invalid (bad arc id, sink outside block, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// A file could not be understood; message carries field/line context.
class ParseError : public Error {
public:
    using Error::Error;
};

// Requested a path that does not exist.
class UnreachableError : public Error {
public:
    using Error::Error;
};

// Problem too large for the requested method (enumeration cap, bit limit).
class CapacityError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace spni

#endif
