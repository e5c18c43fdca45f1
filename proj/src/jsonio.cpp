#include "georep/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "georep/errors.hpp"

namespace georep {

std::string fmt_double(double v) {
    if (!std::isfinite(v))
        throw DomainError("non-finite value cannot be serialized");
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const nlohmann::json& j, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
        case value_t::object: {
            out.push_back('{');
            bool first = true;
            for (auto it = j.cbegin(); it != j.cend(); ++it) {
                if (!first) out.push_back(',');
                first = false;
                out += nlohmann::json(it.key()).dump();
                out.push_back(':');
                dump_rec(it.value(), out);
            }
            out.push_back('}');
            break;
        }
        case value_t::array: {
            out.push_back('[');
            bool first = true;
            for (const auto& el : j) {
                if (!first) out.push_back(',');
                first = false;
                dump_rec(el, out);
            }
            out.push_back(']');
            break;
        }
        case value_t::string:
            out += j.dump();
            break;
        case value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            break;
        case value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            break;
        case value_t::number_float:
            out += fmt_double(j.get<double>());
            break;
        case value_t::null:
            out += "null";
            break;
        default:
            throw DomainError("unsupported JSON value type");
    }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
    std::string out;
    dump_rec(j, out);
    return out;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return j;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path.string());
    out << content;
    if (!out) throw ParseError("write failed: " + path.string());
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text_file(path, canonical_dump(j) + "\n");
}

}  // namespace georep
