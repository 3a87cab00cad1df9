#ifndef CASCADE_CSV_HPP
#define CASCADE_CSV_HPP

#include <charconv>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace cascade {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

/// Comma separated, LF terminated.
class CsvWriter
{
public:
    explicit CsvWriter(std::ostream& os) : m_os(os) {}

    void header(const std::vector<std::string>& columns)
    {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (k) m_os << ',';
            m_os << columns[k];
        }
        m_os << '\n';
    }

    void row(const std::vector<double>& values)
    {
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (k) m_os << ',';
            m_os << format_double(values[k]);
        }
        m_os << '\n';
    }

    void raw_row(const std::vector<std::string>& cells) { header(cells); }

private:
    std::ostream& m_os;
};

} // namespace cascade

#endif
