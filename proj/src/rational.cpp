#include "multiscale/rational.hpp"

#include <cctype>

namespace ms {

namespace {

bool valid_integer(const std::string &s) {
    if (s.empty())
        return false;
    size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size())
        return false;
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    return true;
}

} // namespace

Rat rat_from_string(const std::string &s) {
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!valid_integer(num) || !valid_integer(den))
        throw validation_error("not a rational: \"" + s + "\"");
    Rat r;
    if (r.set_str(num + "/" + den, 10) != 0)
        throw validation_error("not a rational: \"" + s + "\"");
    if (r.get_den() == 0)
        throw validation_error("zero denominator: \"" + s + "\"");
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat &r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

} // namespace ms
