#ifndef ASPECTGEN_IO_BYTE_SOURCE_HPP
#define ASPECTGEN_IO_BYTE_SOURCE_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace aspectgen::io {

// Pull-style byte stream. read() returns 0 only at end of input.
class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual std::size_t read(char* buf, std::size_t max) = 0;

    // Convenience: drain everything that is left.
    std::string read_all();
};

class FileSource : public ByteSource {
public:
    explicit FileSource(const std::string& path);
    ~FileSource() override;
    std::size_t read(char* buf, std::size_t max) override;

private:
    void* file_;  // FILE*
    std::string path_;
};

class MemorySource : public ByteSource {
public:
    explicit MemorySource(std::string data) : data_(std::move(data)) {}
    std::size_t read(char* buf, std::size_t max) override;

private:
    std::string data_;
    std::size_t pos_ = 0;
};

enum class Compression { None, Gzip, Bzip2 };

// Looks at leading magic bytes.
Compression detect_compression(const unsigned char* head, std::size_t n);

// Opens a file and transparently decompresses it based on its magic bytes.
std::unique_ptr<ByteSource> open_input(const std::string& path);

// Wraps an existing source in the right decoder based on its magic bytes.
std::unique_ptr<ByteSource> decompressing_source(std::unique_ptr<ByteSource> raw);

}  // namespace aspectgen::io

#endif
