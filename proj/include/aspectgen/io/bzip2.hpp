#ifndef ASPECTGEN_IO_BZIP2_HPP
#define ASPECTGEN_IO_BZIP2_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "aspectgen/io/byte_source.hpp"

namespace aspectgen::io {

// Streaming bzip2 decoder. Decodes one block at a time, so memory stays
// bounded by the block size declared in the stream header (at most 900 KB
// of text plus the index used to undo the block-sorting transform).
// Concatenated streams are handled; the deprecated "randomised" block
// variant is rejected.
class Bzip2Source : public ByteSource {
public:
    explicit Bzip2Source(std::unique_ptr<ByteSource> raw);
    ~Bzip2Source() override;

    std::size_t read(char* buf, std::size_t max) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot helper, mostly for tests.
std::string bzip2_decompress(const std::string& compressed);

}  // namespace aspectgen::io

#endif
