#include "aspectgen/io/byte_source.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>

#include "aspectgen/errors.hpp"
#include "aspectgen/io/bzip2.hpp"

namespace aspectgen::io {

std::string ByteSource::read_all() {
    std::string out;
    char buf[65536];
    for (;;) {
        std::size_t n = read(buf, sizeof buf);
        if (n == 0) break;
        out.append(buf, n);
    }
    return out;
}

FileSource::FileSource(const std::string& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "rb");
    if (!file_) throw IoError("cannot open " + path);
}

FileSource::~FileSource() {
    if (file_) std::fclose(static_cast<FILE*>(file_));
}

std::size_t FileSource::read(char* buf, std::size_t max) {
    std::size_t n = std::fread(buf, 1, max, static_cast<FILE*>(file_));
    if (n < max && std::ferror(static_cast<FILE*>(file_)))
        throw IoError("read error on " + path_);
    return n;
}

std::size_t MemorySource::read(char* buf, std::size_t max) {
    std::size_t n = std::min(max, data_.size() - pos_);
    std::memcpy(buf, data_.data() + pos_, n);
    pos_ += n;
    return n;
}

namespace {

// Replays a few already-consumed bytes before continuing with the real source.
class PrefixSource : public ByteSource {
public:
    PrefixSource(std::string head, std::unique_ptr<ByteSource> rest)
        : head_(std::move(head)), rest_(std::move(rest)) {}

    std::size_t read(char* buf, std::size_t max) override {
        if (pos_ < head_.size()) {
            std::size_t n = std::min(max, head_.size() - pos_);
            std::memcpy(buf, head_.data() + pos_, n);
            pos_ += n;
            return n;
        }
        return rest_->read(buf, max);
    }

private:
    std::string head_;
    std::size_t pos_ = 0;
    std::unique_ptr<ByteSource> rest_;
};

class GzipSource : public ByteSource {
public:
    explicit GzipSource(std::unique_ptr<ByteSource> raw) : raw_(std::move(raw)) {
        std::memset(&strm_, 0, sizeof strm_);
        // 15+16: gzip container only.
        if (inflateInit2(&strm_, 15 + 16) != Z_OK)
            throw IoError("gzip: cannot initialise inflater");
        open_ = true;
    }

    ~GzipSource() override {
        if (open_) inflateEnd(&strm_);
    }

    std::size_t read(char* buf, std::size_t max) override {
        if (finished_ && strm_.avail_in == 0) return 0;
        strm_.next_out = reinterpret_cast<Bytef*>(buf);
        strm_.avail_out = static_cast<uInt>(max);
        while (strm_.avail_out > 0) {
            if (strm_.avail_in == 0) {
                in_len_ = raw_->read(in_, sizeof in_);
                strm_.next_in = reinterpret_cast<Bytef*>(in_);
                strm_.avail_in = static_cast<uInt>(in_len_);
                if (in_len_ == 0) {
                    if (!finished_) throw IoError("gzip: truncated stream");
                    break;
                }
                if (finished_) {
                    // Another concatenated gzip member follows.
                    if (inflateReset(&strm_) != Z_OK)
                        throw IoError("gzip: cannot restart inflater");
                    finished_ = false;
                }
            }
            int rc = inflate(&strm_, Z_NO_FLUSH);
            if (rc == Z_STREAM_END) {
                finished_ = true;
                if (strm_.avail_in == 0) {
                    // Check whether more compressed members follow.
                    in_len_ = raw_->read(in_, sizeof in_);
                    if (in_len_ == 0) break;
                    strm_.next_in = reinterpret_cast<Bytef*>(in_);
                    strm_.avail_in = static_cast<uInt>(in_len_);
                }
                if (inflateReset(&strm_) != Z_OK)
                    throw IoError("gzip: cannot restart inflater");
                finished_ = false;
                continue;
            }
            if (rc != Z_OK && rc != Z_BUF_ERROR)
                throw IoError(std::string("gzip: inflate failed: ") +
                              (strm_.msg ? strm_.msg : zError(rc)));
        }
        return max - strm_.avail_out;
    }

private:
    std::unique_ptr<ByteSource> raw_;
    z_stream strm_;
    char in_[65536];
    std::size_t in_len_ = 0;
    bool open_ = false;
    bool finished_ = false;
};

}  // namespace

Compression detect_compression(const unsigned char* head, std::size_t n) {
    if (n >= 2 && head[0] == 0x1F && head[1] == 0x8B) return Compression::Gzip;
    if (n >= 3 && head[0] == 'B' && head[1] == 'Z' && head[2] == 'h')
        return Compression::Bzip2;
    return Compression::None;
}

std::unique_ptr<ByteSource> decompressing_source(std::unique_ptr<ByteSource> raw) {
    char head[3];
    std::size_t got = 0;
    while (got < sizeof head) {
        std::size_t n = raw->read(head + got, sizeof head - got);
        if (n == 0) break;
        got += n;
    }
    auto replayed = std::make_unique<PrefixSource>(std::string(head, got),
                                                   std::move(raw));
    switch (detect_compression(reinterpret_cast<unsigned char*>(head), got)) {
        case Compression::Gzip:
            return std::make_unique<GzipSource>(std::move(replayed));
        case Compression::Bzip2:
            return std::make_unique<Bzip2Source>(std::move(replayed));
        case Compression::None:
            return replayed;
    }
    return replayed;
}

std::unique_ptr<ByteSource> open_input(const std::string& path) {
    return decompressing_source(std::make_unique<FileSource>(path));
}

}  // namespace aspectgen::io
