#ifndef RATASP_TESTS_FIXTURES_HH
#define RATASP_TESTS_FIXTURES_HH

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ratasp::fixtures {

inline std::filesystem::path directory() { return RATASP_FIXTURES; }

inline std::filesystem::path golden_directory() { return RATASP_GOLDEN; }

inline std::string slurp(std::filesystem::path const &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string read(std::string const &name) { return slurp(directory() / name); }

// Expected emitter output, compared byte for byte.
inline std::string read_golden(std::string const &name) { return slurp(golden_directory() / name); }

// All *.lp fixtures, sorted by name.
inline std::vector<std::string> programs() {
    std::vector<std::string> out;
    for (auto const &e : std::filesystem::directory_iterator(directory())) {
        if (e.path().extension() == ".lp") { out.push_back(e.path().filename().string()); }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ratasp::fixtures

#endif // RATASP_TESTS_FIXTURES_HH
