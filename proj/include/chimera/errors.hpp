#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chimera {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Triple-file line whose token count is not exactly three.
class MalformedLineError : public Error {
public:
    MalformedLineError(std::size_t line, const std::string& detail)
        : Error("line " + std::to_string(line) + ": " + detail), line_no(line) {}
    std::size_t line_no;
};

/// Triple whose head and tail name the same concept.
class SelfLoopError : public Error {
public:
    SelfLoopError(std::size_t line, const std::string& label)
        : Error("line " + std::to_string(line) + ": self loop on '" + label + "'"),
          line_no(line) {}
    std::size_t line_no;
};

class UnknownConceptError : public Error {
public:
    explicit UnknownConceptError(const std::string& lbl)
        : Error("unknown concept '" + lbl + "'"), label(lbl) {}
    std::string label;
};

class EmptyGraphError : public Error {
public:
    EmptyGraphError() : Error("graph has no concepts") {}
};

class NoAnalogyError : public Error {
public:
    explicit NoAnalogyError(std::size_t best)
        : Error("no analogy above the minimum mapping count (best " +
                std::to_string(best) + ")"),
          best_size(best) {}
    std::size_t best_size;
};

/// Document did not match the expected schema; `where` is a dotted location.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& loc, const std::string& detail)
        : Error("schema error at " + loc + ": " + detail), where(loc) {}
    std::string where;
};

class DanglingRelationError : public Error {
public:
    DanglingRelationError(std::size_t idx, const std::string& path)
        : Error("relation " + std::to_string(idx) + " references missing part '" +
                path + "'"),
          index(idx) {}
    std::size_t index;
};

class UnknownPathError : public Error {
public:
    explicit UnknownPathError(const std::string& p)
        : Error("no object at path '" + p + "'"), path(p) {}
    std::string path;
};

class EmptyGeometryError : public Error {
public:
    explicit EmptyGeometryError(const std::string& p)
        : Error("object at '" + p + "' has no geometry"), path(p) {}
    std::string path;
};

class UnsupportedElementError : public Error {
public:
    explicit UnsupportedElementError(const std::string& t)
        : Error("unsupported svg element '" + t + "'"), tag(t) {}
    std::string tag;
};

class MissingIdError : public Error {
public:
    explicit MissingIdError(const std::string& element)
        : Error("svg element '" + element + "' requires an id") {}
};

class DimensionMismatchError : public Error {
public:
    DimensionMismatchError() : Error("bitmap dimensions differ") {}
};

class RefillExhaustedError : public Error {
public:
    RefillExhaustedError() : Error("could not construct any admissible blend") {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& p)
        : Error("cannot open '" + p + "'"), path(p) {}
    std::string path;
};

}  // namespace chimera
