#include "kravchuk/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace kravchuk {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string CsvTable::str() const {
    std::ostringstream os;
    auto join = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    for (const auto& m : metadata) os << "# " << m << '\n';
    join(header);
    for (const auto& r : rows) join(r);
    for (const auto& f : footer) os << "# " << f << '\n';
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::filesystem::filesystem_error("cannot open for writing", tmp, std::error_code());
        out << content;
        out.flush();
        if (!out) throw std::filesystem::filesystem_error("write failed", tmp, std::error_code());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace kravchuk
