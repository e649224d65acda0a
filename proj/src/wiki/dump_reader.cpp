#include "aspectgen/wiki/dump_reader.hpp"

#include <expat.h>

#include <charconv>
#include <cstring>
#include <string_view>

#include "aspectgen/errors.hpp"

namespace aspectgen::wiki {

namespace {

constexpr std::size_t kChunk = 64 * 1024;

bool parse_int(const std::string& s, std::int64_t& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\n' || *b == '\t')) b++;
    while (e > b && (e[-1] == ' ' || e[-1] == '\n' || e[-1] == '\t')) e--;
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e && b != e;
}

}  // namespace

struct DumpReader::Impl {
    std::unique_ptr<io::ByteSource> source;
    XML_Parser parser = nullptr;

    std::deque<RawPage> ready;
    bool eof = false;
    bool finalized = false;

    int depth = 0;
    bool in_page = false;
    bool in_revision = false;
    bool page_id_set = false;
    bool capturing = false;
    enum class Field { None, Title, Ns, PageId, Text } field = Field::None;
    std::string chardata;
    RawPage current;
    std::string current_title;  // context for error reporting

    std::string handler_error;
    bool handler_failed = false;
    std::optional<DumpError> pending_error;

    explicit Impl(std::unique_ptr<io::ByteSource> src) : source(std::move(src)) {
        parser = XML_ParserCreate(nullptr);
        if (!parser) throw IoError("cannot create XML parser");
        XML_SetUserData(parser, this);
        XML_SetElementHandler(parser, start_element, end_element);
        XML_SetCharacterDataHandler(parser, char_data);
    }

    ~Impl() {
        if (parser) XML_ParserFree(parser);
    }

    void fail(const std::string& msg) {
        handler_failed = true;
        handler_error = msg;
        XML_StopParser(parser, XML_FALSE);
    }

    static void start_element(void* ud, const XML_Char* name, const XML_Char**) {
        auto* self = static_cast<Impl*>(ud);
        self->depth++;
        std::string_view n(name);
        if (self->depth == 2 && n == "page") {
            self->in_page = true;
            self->in_revision = false;
            self->page_id_set = false;
            self->current = RawPage{};
            self->current_title.clear();
            return;
        }
        if (!self->in_page) return;
        if (self->depth == 3) {
            if (n == "title") {
                self->begin_capture(Field::Title);
            } else if (n == "ns") {
                self->begin_capture(Field::Ns);
            } else if (n == "id" && !self->page_id_set) {
                self->begin_capture(Field::PageId);
            } else if (n == "redirect") {
                self->current.is_redirect = true;
            } else if (n == "revision") {
                self->in_revision = true;
            }
        } else if (self->depth == 4 && self->in_revision && n == "text") {
            self->begin_capture(Field::Text);
        }
    }

    static void end_element(void* ud, const XML_Char* name) {
        auto* self = static_cast<Impl*>(ud);
        std::string_view n(name);
        if (self->capturing) {
            switch (self->field) {
                case Field::Title: {
                    std::string t = self->chardata;
                    std::size_t b = t.find_first_not_of(" \t\n\r");
                    std::size_t e = t.find_last_not_of(" \t\n\r");
                    t = b == std::string::npos ? std::string()
                                               : t.substr(b, e - b + 1);
                    self->current.title = t;
                    self->current_title = t;
                    break;
                }
                case Field::Ns: {
                    std::int64_t v;
                    if (!parse_int(self->chardata, v)) {
                        self->fail("non-numeric <ns> value \"" + self->chardata +
                                   "\"");
                        return;
                    }
                    self->current.ns = static_cast<int>(v);
                    break;
                }
                case Field::PageId: {
                    std::int64_t v;
                    if (!parse_int(self->chardata, v) || v < 0) {
                        self->fail("bad <id> value \"" + self->chardata + "\"");
                        return;
                    }
                    self->current.page_id = static_cast<std::uint64_t>(v);
                    self->page_id_set = true;
                    break;
                }
                case Field::Text:
                    self->current.wikitext = std::move(self->chardata);
                    break;
                case Field::None:
                    break;
            }
            self->capturing = false;
            self->field = Field::None;
            self->chardata.clear();
        }
        if (self->depth == 3 && n == "revision") self->in_revision = false;
        if (self->depth == 2 && n == "page") {
            self->ready.push_back(std::move(self->current));
            self->in_page = false;
        }
        self->depth--;
    }

    static void char_data(void* ud, const XML_Char* s, int len) {
        auto* self = static_cast<Impl*>(ud);
        if (self->capturing) self->chardata.append(s, static_cast<std::size_t>(len));
    }

    void begin_capture(Field f) {
        capturing = true;
        field = f;
        chardata.clear();
    }

    DumpError make_parse_error(bool at_eof) {
        std::int64_t off = static_cast<std::int64_t>(XML_GetCurrentByteIndex(parser));
        if (handler_failed)
            return DumpError(DumpError::Kind::Malformed, off, current_title,
                             handler_error);
        std::string detail = XML_ErrorString(XML_GetErrorCode(parser));
        if (at_eof)
            return DumpError(DumpError::Kind::Truncated, off, current_title,
                             "input ended mid-document (" + detail + ")");
        return DumpError(DumpError::Kind::Malformed, off, current_title, detail);
    }

    // Complete pages already parsed are handed out before any stored error
    // is raised, so a damaged tail never hides the readable front.
    void pump() {
        char buf[kChunk];
        while (ready.empty() && !finalized) {
            std::size_t n = source->read(buf, sizeof buf);
            if (n == 0) {
                finalized = true;
                if (XML_Parse(parser, buf, 0, XML_TRUE) == XML_STATUS_ERROR)
                    pending_error = make_parse_error(true);
                return;
            }
            if (XML_Parse(parser, buf, static_cast<int>(n), XML_FALSE) ==
                XML_STATUS_ERROR) {
                finalized = true;
                pending_error = make_parse_error(false);
                return;
            }
        }
    }

    std::optional<RawPage> next() {
        if (ready.empty()) pump();
        if (ready.empty()) {
            if (pending_error) throw *pending_error;
            return std::nullopt;
        }
        RawPage p = std::move(ready.front());
        ready.pop_front();
        return p;
    }
};

DumpReader::DumpReader(const std::string& path)
    : impl_(std::make_unique<Impl>(io::open_input(path))) {}

DumpReader::DumpReader(std::unique_ptr<io::ByteSource> source)
    : impl_(std::make_unique<Impl>(io::decompressing_source(std::move(source)))) {}

DumpReader::~DumpReader() = default;

std::optional<RawPage> DumpReader::next() {
    return impl_->next();
}

}  // namespace aspectgen::wiki
