#ifndef HOIP_ERROR_HPP
#define HOIP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hoip {

// Error hierarchy. Each class maps to a distinct CLI exit code so scripted
// callers can tell failure modes apart.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 1; }
};

struct ConfigError : Error {
    using Error::Error;
    int exit_code() const override { return 3; }
};

struct IoError : Error {
    using Error::Error;
    int exit_code() const override { return 4; }
};

struct FormatError : Error {
    using Error::Error;
    int exit_code() const override { return 5; }
};

struct EmptyDatasetError : Error {
    using Error::Error;
    int exit_code() const override { return 6; }
};

struct NumericError : Error {
    using Error::Error;
    int exit_code() const override { return 7; }
};

}  // namespace hoip

#endif
