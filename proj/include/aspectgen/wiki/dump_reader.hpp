#ifndef ASPECTGEN_WIKI_DUMP_READER_HPP
#define ASPECTGEN_WIKI_DUMP_READER_HPP

#include <deque>
#include <memory>
#include <optional>
#include <string>

#include "aspectgen/io/byte_source.hpp"
#include "aspectgen/wiki/page.hpp"

namespace aspectgen::wiki {

// Streams <page> elements out of a MediaWiki XML export without ever holding
// the whole document in memory. The input may be plain XML, gzip or bzip2;
// the constructor sniffs the leading bytes. Broken XML raises DumpError with
// the byte offset (of the *decompressed* stream) and the title of the page
// being read when the damage was hit.
class DumpReader {
public:
    explicit DumpReader(const std::string& path);
    explicit DumpReader(std::unique_ptr<io::ByteSource> source);
    ~DumpReader();

    DumpReader(const DumpReader&) = delete;
    DumpReader& operator=(const DumpReader&) = delete;

    // Next page in document order, or nullopt after the last one.
    std::optional<RawPage> next();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace aspectgen::wiki

#endif
