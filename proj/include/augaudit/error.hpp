// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <stdexcept>
#include <string>

namespace augaudit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CorpusError : public Error {
public:
    using Error::Error;
};

class TokenizeError : public Error {
public:
    using Error::Error;
};

class AugmentError : public Error {
public:
    using Error::Error;
};

class SplitError : public Error {
public:
    using Error::Error;
};

class LeakageError : public Error {
public:
    using Error::Error;
};

class ClassifierError : public Error {
public:
    using Error::Error;
};

class MetricsError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure of one pipeline stage; `stage()` names it ("ingest", "augment", ...).
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& cause)
        : Error("stage " + stage + ": " + cause), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace augaudit
