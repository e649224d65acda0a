#ifndef ASPECTGEN_TESTS_HELPERS_HPP
#define ASPECTGEN_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// Self-deleting scratch directory under the system temp dir.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "aspectgen-test") {
        std::random_device rd;
        std::mt19937_64 rng(rd());
        for (int attempt = 0; attempt < 64; attempt++) {
            auto candidate = std::filesystem::temp_directory_path() /
                             (tag + "-" + std::to_string(rng()));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const {
        return (path_ / name).string();
    }

private:
    std::filesystem::path path_;
};

}  // namespace testutil

#endif
