#ifndef ASPECTGEN_ERRORS_HPP
#define ASPECTGEN_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aspectgen {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or unreadable input bytes (files, compression streams).
class IoError : public Error {
public:
    using Error::Error;
};

// Problems in the XML dump. Carries enough context to locate the damage.
class DumpError : public Error {
public:
    enum class Kind { Malformed, Truncated };

    DumpError(Kind kind, std::int64_t byte_offset, std::string enclosing_title,
              const std::string& detail)
        : Error(format(kind, byte_offset, enclosing_title, detail)),
          kind_(kind),
          byte_offset_(byte_offset),
          enclosing_title_(std::move(enclosing_title)) {}

    Kind kind() const { return kind_; }
    std::int64_t byte_offset() const { return byte_offset_; }
    const std::string& enclosing_title() const { return enclosing_title_; }

private:
    static std::string format(Kind kind, std::int64_t off, const std::string& title,
                              const std::string& detail) {
        std::string s = kind == Kind::Truncated ? "truncated dump" : "malformed dump";
        s += " at byte " + std::to_string(off);
        if (!title.empty()) s += " (inside page \"" + title + "\")";
        s += ": " + detail;
        return s;
    }

    Kind kind_;
    std::int64_t byte_offset_;
    std::string enclosing_title_;
};

// Invalid run configuration (file contents or overrides).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A JSONL file with a bad line; remembers which one.
class JsonlError : public Error {
public:
    JsonlError(std::string path, std::size_t line_number, const std::string& detail)
        : Error(path + ":" + std::to_string(line_number) + ": " + detail),
          path_(std::move(path)),
          line_number_(line_number) {}

    const std::string& path() const { return path_; }
    std::size_t line_number() const { return line_number_; }

private:
    std::string path_;
    std::size_t line_number_;
};

// Metric preconditions violated (dimension mismatch, empty corpus, ...).
class MetricError : public Error {
public:
    using Error::Error;
};

// Generation endpoint trouble that survives retries.
class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace aspectgen

#endif
