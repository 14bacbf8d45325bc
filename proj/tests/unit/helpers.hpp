#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "scarif/model.hpp"

namespace scarif::test {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(SCARIF_DATA_DIR) / rel; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("scarif-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& text) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Random server configurations inside the model's calibrated regime.
inline ServerConfig random_config(std::mt19937& rng) {
    std::uniform_int_distribution<int> cores(1, 256);
    std::uniform_real_distribution<double> size(0.0, 16000.0);
    std::uniform_real_distribution<double> mem(0.0, 2048.0);
    std::uniform_int_distribution<int> year(2000, 2030);
    std::uniform_int_distribution<int> vendor(0, 3);
    ServerConfig c;
    c.cpu_core_count = cores(rng);
    c.ssd_gb = size(rng);
    c.hdd_gb = size(rng);
    c.memory_gb = mem(rng);
    c.release_year = year(rng);
    c.vendor = static_cast<Vendor>(vendor(rng));
    return c;
}

}  // namespace scarif::test
