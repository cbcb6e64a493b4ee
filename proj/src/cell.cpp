#include "reclaim/cell.hpp"

#include <cctype>

namespace reclaim {

std::string canonicalize(std::string_view raw, bool case_fold) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    std::string out(raw.substr(begin, end - begin));
    if (case_fold) {
        for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return out;
}

}  // namespace reclaim
