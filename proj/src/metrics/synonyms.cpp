#include "aspectgen/metrics/synonyms.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "aspectgen/errors.hpp"

namespace aspectgen::metrics {

SynonymTable SynonymTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open synonym table " + path);
    SynonymTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected `token<TAB>group_ids`");
        std::string token = line.substr(0, tab);
        std::vector<std::uint64_t> ids;
        std::size_t pos = tab + 1;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            std::size_t end = comma == std::string::npos ? line.size() : comma;
            std::uint64_t id = 0;
            auto [p, ec] = std::from_chars(line.data() + pos, line.data() + end, id);
            if (ec != std::errc() || p != line.data() + end || pos == end)
                throw IoError(path + ":" + std::to_string(line_no) +
                              ": bad group id \"" + line.substr(pos, end - pos) +
                              "\"");
            ids.push_back(id);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (ids.empty())
            throw IoError(path + ":" + std::to_string(line_no) + ": no group ids");
        table.add(token, std::move(ids));
    }
    return table;
}

void SynonymTable::add(const std::string& token,
                       std::vector<std::uint64_t> group_ids) {
    auto& dest = groups_[token];
    dest.insert(dest.end(), group_ids.begin(), group_ids.end());
    std::sort(dest.begin(), dest.end());
    dest.erase(std::unique(dest.begin(), dest.end()), dest.end());
}

bool SynonymTable::synonyms(const std::string& a, const std::string& b) const {
    auto ia = groups_.find(a);
    if (ia == groups_.end()) return false;
    auto ib = groups_.find(b);
    if (ib == groups_.end()) return false;
    const auto& ga = ia->second;
    const auto& gb = ib->second;
    std::size_t i = 0, j = 0;
    while (i < ga.size() && j < gb.size()) {
        if (ga[i] == gb[j]) return true;
        if (ga[i] < gb[j])
            i++;
        else
            j++;
    }
    return false;
}

}  // namespace aspectgen::metrics
