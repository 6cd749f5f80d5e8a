#pragma once

#include <stdexcept>
#include <string>

namespace bambookg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyTag : public Error {
public:
    using Error::Error;
};

class UnknownTag : public Error {
public:
    using Error::Error;
};

class InvalidPair : public Error {
public:
    using Error::Error;
};

class DuplicateChunk : public Error {
public:
    using Error::Error;
};

class DuplicateDocument : public Error {
public:
    using Error::Error;
};

class EmptyDocument : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class TaggerUnavailable : public Error {
public:
    using Error::Error;
};

class NoTagsFound : public Error {
public:
    using Error::Error;
};

class NoKnownTags : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class CorruptSnapshot : public Error {
public:
    using Error::Error;
};

class VersionMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace bambookg
