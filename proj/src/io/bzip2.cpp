#include "aspectgen/io/bzip2.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "aspectgen/errors.hpp"

namespace aspectgen::io {

namespace {

constexpr int kGroupSize = 50;
constexpr int kMaxGroups = 6;
constexpr int kMaxAlpha = 258;
constexpr int kMaxCodeLen = 23;
constexpr std::uint64_t kBlockMagic = 0x314159265359ULL;
constexpr std::uint64_t kStreamEndMagic = 0x177245385090ULL;

const std::array<std::uint32_t, 256>& crc_table() {
    static const std::array<std::uint32_t, 256> tab = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; i++) {
            std::uint32_t c = i << 24;
            for (int k = 0; k < 8; k++)
                c = (c << 1) ^ ((c & 0x80000000u) ? 0x04C11DB7u : 0u);
            t[i] = c;
        }
        return t;
    }();
    return tab;
}

class BitReader {
public:
    explicit BitReader(ByteSource& src) : src_(src) {}

    std::uint32_t bits(int n) {
        while (nbits_ < n) {
            unsigned char b;
            std::size_t got = src_.read(reinterpret_cast<char*>(&b), 1);
            if (got == 0) throw IoError("bzip2: unexpected end of stream");
            buf_ = (buf_ << 8) | b;
            nbits_ += 8;
        }
        std::uint32_t v = static_cast<std::uint32_t>((buf_ >> (nbits_ - n)) &
                                                     ((1ULL << n) - 1));
        nbits_ -= n;
        return v;
    }

    std::uint32_t bit() { return bits(1); }

    void align_byte() { nbits_ -= nbits_ % 8; }

    // After aligning, reports whether another byte exists (keeps it buffered).
    bool at_end() {
        align_byte();
        if (nbits_ > 0) return false;
        unsigned char b;
        std::size_t got = src_.read(reinterpret_cast<char*>(&b), 1);
        if (got == 0) return true;
        buf_ = (buf_ << 8) | b;
        nbits_ = 8;
        return false;
    }

private:
    ByteSource& src_;
    std::uint64_t buf_ = 0;
    int nbits_ = 0;
};

struct HuffTable {
    std::array<std::int32_t, kMaxCodeLen + 2> limit{};
    std::array<std::int32_t, kMaxCodeLen + 2> base{};
    std::array<std::int32_t, kMaxAlpha> perm{};
    int min_len = 0;
    int max_len = 0;
};

void build_table(HuffTable& t, const std::array<std::uint8_t, kMaxAlpha>& len,
                 int alpha_size) {
    t.min_len = kMaxCodeLen;
    t.max_len = 0;
    for (int s = 0; s < alpha_size; s++) {
        t.min_len = std::min<int>(t.min_len, len[s]);
        t.max_len = std::max<int>(t.max_len, len[s]);
    }
    int pp = 0;
    for (int l = t.min_len; l <= t.max_len; l++)
        for (int s = 0; s < alpha_size; s++)
            if (len[s] == l) t.perm[pp++] = s;

    t.base.fill(0);
    for (int s = 0; s < alpha_size; s++) t.base[len[s] + 1]++;
    for (int l = 1; l <= kMaxCodeLen + 1; l++) t.base[l] += t.base[l - 1];
    t.limit.fill(0);
    std::int32_t vec = 0;
    for (int l = t.min_len; l <= t.max_len; l++) {
        vec += t.base[l + 1] - t.base[l];
        t.limit[l] = vec - 1;
        vec <<= 1;
    }
    for (int l = t.min_len + 1; l <= t.max_len; l++)
        t.base[l] = ((t.limit[l - 1] + 1) << 1) - t.base[l];
}

int decode_symbol(BitReader& br, const HuffTable& t) {
    int l = t.min_len;
    std::int32_t vec = static_cast<std::int32_t>(br.bits(l));
    while (vec > t.limit[l]) {
        l++;
        if (l > t.max_len) throw IoError("bzip2: invalid huffman code");
        vec = (vec << 1) | static_cast<std::int32_t>(br.bit());
    }
    return t.perm[vec - t.base[l]];
}

}  // namespace

struct Bzip2Source::Impl {
    std::unique_ptr<ByteSource> raw;
    BitReader br;

    enum class State { StreamHeader, BlockOrFooter, Emitting, Done };
    State state = State::StreamHeader;

    std::size_t block_capacity = 0;  // 100k * level

    // Current block, in post-transform order.
    std::vector<std::uint8_t> bwt;
    std::vector<std::uint32_t> next_index;
    std::uint32_t tpos = 0;
    std::size_t block_remaining = 0;
    std::uint32_t expected_block_crc = 0;
    std::uint32_t block_crc = 0xFFFFFFFFu;
    std::uint32_t combined_crc = 0;

    // Run-length (stage one) decode state.
    int run_char = -1;
    int run_len = 0;
    std::size_t pending_copies = 0;

    explicit Impl(std::unique_ptr<ByteSource> r) : raw(std::move(r)), br(*raw) {}

    void read_stream_header(bool first) {
        if (!first && br.at_end()) {
            state = State::Done;
            return;
        }
        std::uint32_t b0 = br.bits(8), b1 = br.bits(8), b2 = br.bits(8);
        if (b0 != 'B' || b1 != 'Z' || b2 != 'h')
            throw IoError("bzip2: bad stream header magic");
        std::uint32_t level = br.bits(8);
        if (level < '1' || level > '9')
            throw IoError("bzip2: bad block-size digit in header");
        block_capacity = 100000u * (level - '0');
        combined_crc = 0;
        state = State::BlockOrFooter;
    }

    // Reads the 48-bit marker that starts either a block or the stream footer.
    void read_block_or_footer() {
        std::uint64_t magic = (static_cast<std::uint64_t>(br.bits(24)) << 24) |
                              br.bits(24);
        if (magic == kStreamEndMagic) {
            std::uint32_t stored = br.bits(32);
            if (stored != combined_crc)
                throw IoError("bzip2: stream crc mismatch");
            read_stream_header(false);  // maybe another concatenated stream
            return;
        }
        if (magic != kBlockMagic) throw IoError("bzip2: bad block magic");
        decode_block();
        state = State::Emitting;
    }

    void decode_block() {
        expected_block_crc = br.bits(32);
        if (br.bit()) throw IoError("bzip2: randomised blocks are not supported");
        std::uint32_t orig_ptr = br.bits(24);

        // Which byte values occur in this block.
        std::array<std::uint8_t, 256> seq_to_unseq{};
        int n_used = 0;
        std::uint32_t used16 = br.bits(16);
        for (int i = 0; i < 16; i++) {
            if (!(used16 & (0x8000u >> i))) continue;
            std::uint32_t bits16 = br.bits(16);
            for (int j = 0; j < 16; j++)
                if (bits16 & (0x8000u >> j))
                    seq_to_unseq[n_used++] = static_cast<std::uint8_t>(i * 16 + j);
        }
        if (n_used == 0) throw IoError("bzip2: empty symbol map");
        int alpha_size = n_used + 2;

        int n_groups = static_cast<int>(br.bits(3));
        if (n_groups < 2 || n_groups > kMaxGroups)
            throw IoError("bzip2: bad group count");
        int n_selectors = static_cast<int>(br.bits(15));
        if (n_selectors < 1) throw IoError("bzip2: bad selector count");

        std::vector<std::uint8_t> selectors(n_selectors);
        {
            std::array<std::uint8_t, kMaxGroups> mtf{};
            for (int g = 0; g < n_groups; g++) mtf[g] = static_cast<std::uint8_t>(g);
            for (int i = 0; i < n_selectors; i++) {
                int j = 0;
                while (br.bit()) {
                    j++;
                    if (j >= n_groups) throw IoError("bzip2: bad selector");
                }
                std::uint8_t v = mtf[j];
                for (; j > 0; j--) mtf[j] = mtf[j - 1];
                mtf[0] = v;
                selectors[i] = v;
            }
        }

        std::array<HuffTable, kMaxGroups> tables;
        for (int g = 0; g < n_groups; g++) {
            std::array<std::uint8_t, kMaxAlpha> len{};
            int cur = static_cast<int>(br.bits(5));
            for (int s = 0; s < alpha_size; s++) {
                while (br.bit()) cur += br.bit() ? -1 : 1;
                if (cur < 1 || cur > 20)
                    throw IoError("bzip2: code length out of range");
                len[s] = static_cast<std::uint8_t>(cur);
            }
            build_table(tables[g], len, alpha_size);
        }

        // Undo the move-to-front + run-length coding of the sorted block.
        std::vector<std::uint8_t> mtf(seq_to_unseq.begin(),
                                      seq_to_unseq.begin() + n_used);
        bwt.clear();
        bwt.reserve(block_capacity);
        std::array<std::uint32_t, 256> counts{};
        int group_no = -1, group_pos = 0;
        const HuffTable* table = nullptr;
        int eob = alpha_size - 1;
        std::size_t run = 0;
        int run_shift = 0;
        for (;;) {
            if (group_pos == 0) {
                group_no++;
                if (group_no >= n_selectors)
                    throw IoError("bzip2: ran out of selectors");
                group_pos = kGroupSize;
                table = &tables[selectors[group_no]];
            }
            group_pos--;
            int sym = decode_symbol(br, *table);
            if (sym <= 1) {
                run += static_cast<std::size_t>(sym + 1) << run_shift;
                run_shift++;
                if (run > block_capacity) throw IoError("bzip2: run overflows block");
                continue;
            }
            if (run > 0) {
                if (bwt.size() + run > block_capacity)
                    throw IoError("bzip2: block overflows declared size");
                counts[mtf[0]] += run;
                bwt.insert(bwt.end(), run, mtf[0]);
                run = 0;
                run_shift = 0;
            }
            if (sym == eob) break;
            int idx = sym - 1;
            std::uint8_t byte = mtf[idx];
            std::memmove(mtf.data() + 1, mtf.data(), idx);
            mtf[0] = byte;
            if (bwt.size() + 1 > block_capacity)
                throw IoError("bzip2: block overflows declared size");
            counts[byte]++;
            bwt.push_back(byte);
        }
        if (bwt.empty()) throw IoError("bzip2: empty block");
        if (orig_ptr >= bwt.size()) throw IoError("bzip2: origin pointer out of range");

        // Invert the block-sorting transform.
        std::array<std::uint32_t, 256> cum{};
        std::uint32_t total = 0;
        for (int b = 0; b < 256; b++) {
            cum[b] = total;
            total += counts[b];
        }
        next_index.assign(bwt.size(), 0);
        for (std::uint32_t i = 0; i < bwt.size(); i++)
            next_index[cum[bwt[i]]++] = i;
        tpos = next_index[orig_ptr];
        block_remaining = bwt.size();
        block_crc = 0xFFFFFFFFu;
        run_char = -1;
        run_len = 0;
        pending_copies = 0;
    }

    bool next_block_byte(std::uint8_t& out) {
        if (block_remaining == 0) return false;
        out = bwt[tpos];
        tpos = next_index[tpos];
        block_remaining--;
        return true;
    }

    void finish_block() {
        std::uint32_t final_crc = block_crc ^ 0xFFFFFFFFu;
        if (final_crc != expected_block_crc)
            throw IoError("bzip2: block crc mismatch");
        combined_crc = ((combined_crc << 1) | (combined_crc >> 31)) ^ final_crc;
        state = State::BlockOrFooter;
    }

    // Produces one byte of final output, undoing the first run-length stage.
    bool emit_byte(std::uint8_t& out) {
        for (;;) {
            if (pending_copies > 0) {
                pending_copies--;
                out = static_cast<std::uint8_t>(run_char);
                if (pending_copies == 0) {
                    run_char = -1;
                    run_len = 0;
                }
                block_crc = (block_crc << 8) ^
                            crc_table()[((block_crc >> 24) ^ out) & 0xFF];
                return true;
            }
            std::uint8_t b;
            if (!next_block_byte(b)) {
                finish_block();
                return false;
            }
            if (run_len == 4) {
                // Fifth position carries a repeat count, not data.
                pending_copies = b;
                if (pending_copies == 0) {
                    run_char = -1;
                    run_len = 0;
                }
                continue;
            }
            if (static_cast<int>(b) == run_char) {
                run_len++;
            } else {
                run_char = b;
                run_len = 1;
            }
            out = b;
            block_crc = (block_crc << 8) ^
                        crc_table()[((block_crc >> 24) ^ out) & 0xFF];
            return true;
        }
    }

    std::size_t read(char* buf, std::size_t max) {
        std::size_t produced = 0;
        while (produced < max) {
            switch (state) {
                case State::StreamHeader:
                    read_stream_header(true);
                    break;
                case State::BlockOrFooter:
                    read_block_or_footer();
                    break;
                case State::Emitting: {
                    std::uint8_t b;
                    if (emit_byte(b)) buf[produced++] = static_cast<char>(b);
                    break;
                }
                case State::Done:
                    return produced;
            }
        }
        return produced;
    }
};

Bzip2Source::Bzip2Source(std::unique_ptr<ByteSource> raw)
    : impl_(std::make_unique<Impl>(std::move(raw))) {}

Bzip2Source::~Bzip2Source() = default;

std::size_t Bzip2Source::read(char* buf, std::size_t max) {
    return impl_->read(buf, max);
}

std::string bzip2_decompress(const std::string& compressed) {
    Bzip2Source src(std::make_unique<MemorySource>(compressed));
    return src.read_all();
}

}  // namespace aspectgen::io
