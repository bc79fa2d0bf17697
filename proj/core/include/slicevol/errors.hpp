#pragma once

#include <stdexcept>
#include <string>

namespace slicevol {

/// Base class for all slicevol errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A body whose radial function is non-finite, non-positive or otherwise
/// unusable. Carries the name of the offending variant.
class InvalidBodyError : public Error {
public:
    InvalidBodyError(std::string variant, const std::string& what)
        : Error("invalid body [" + variant + "]: " + what), variant_(std::move(variant)) {}

    const std::string& variant() const noexcept { return variant_; }

private:
    std::string variant_;
};

/// Malformed body-spec text. `path` locates the offending field
/// ("body.of[1].r" style).
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& what)
        : Error("parse error at " + (path.empty() ? std::string("<root>") : path) + ": " + what),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A body that parsed but failed validation sampling.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error("validation failure: " + what) {}
};

} // namespace slicevol
