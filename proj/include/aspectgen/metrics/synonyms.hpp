#ifndef ASPECTGEN_METRICS_SYNONYMS_HPP
#define ASPECTGEN_METRICS_SYNONYMS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace aspectgen::metrics {

// Token -> synonym group ids. Two tokens count as synonyms when their group
// id sets intersect. An empty table simply matches nothing.
class SynonymTable {
public:
    SynonymTable() = default;

    // File format: one entry per line, `token<TAB>group_id[,group_id...]`.
    // Blank lines and lines starting with '#' are skipped. Repeated tokens
    // accumulate groups.
    static SynonymTable load(const std::string& path);

    void add(const std::string& token, std::vector<std::uint64_t> group_ids);

    bool synonyms(const std::string& a, const std::string& b) const;

    bool empty() const { return groups_.empty(); }
    std::size_t size() const { return groups_.size(); }

private:
    // Sorted group ids per token, for linear-merge intersection tests.
    std::unordered_map<std::string, std::vector<std::uint64_t>> groups_;
};

}  // namespace aspectgen::metrics

#endif
