#include "pmesym/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pmesym/errors.hpp"

namespace pmesym {

Json Json::boolean(bool b) { Json j; j.kind_ = Kind::Bool; j.bool_ = b; return j; }
Json Json::integer(std::int64_t v) { Json j; j.kind_ = Kind::Int; j.int_ = v; return j; }
Json Json::real(double v) { Json j; j.kind_ = Kind::Real; j.real_ = v; return j; }
Json Json::str(std::string s) { Json j; j.kind_ = Kind::Str; j.str_ = std::move(s); return j; }
Json Json::array() { Json j; j.kind_ = Kind::Arr; return j; }
Json Json::object() { Json j; j.kind_ = Kind::Obj; return j; }

void Json::push_back(Json v) {
    if (kind_ != Kind::Arr) throw InvalidArgument("push_back on non-array json value");
    arr_.push_back(std::move(v));
}

Json& Json::operator[](const std::string& key) {
    if (kind_ != Kind::Obj) throw InvalidArgument("key access on non-object json value");
    for (auto& kv : obj_)
        if (kv.first == key) return kv.second;
    obj_.emplace_back(key, Json());
    return obj_.back().second;
}

bool Json::contains(const std::string& key) const {
    if (kind_ != Kind::Obj) return false;
    for (const auto& kv : obj_)
        if (kv.first == key) return true;
    return false;
}

const Json& Json::at(const std::string& key) const {
    for (const auto& kv : obj_)
        if (kv.first == key) return kv.second;
    throw InvalidArgument("missing json key '" + key + "'");
}

double Json::as_real() const {
    if (kind_ == Kind::Int) return double(int_);
    return real_;
}

std::string format_real(double v) {
    if (!std::isfinite(v)) {
        if (std::isnan(v)) return "\"nan\"";
        return v > 0 ? "\"inf\"" : "\"-inf\"";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void pad(std::string& out, int indent, int depth) {
    if (indent > 0) out.append(std::size_t(indent) * std::size_t(depth), ' ');
}

} // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
    const char* nl = indent > 0 ? "\n" : "";
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += bool_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(int_); break;
        case Kind::Real: out += format_real(real_); break;
        case Kind::Str: escape_into(out, str_); break;
        case Kind::Arr: {
            if (arr_.empty()) { out += "[]"; break; }
            out += '[';
            out += nl;
            for (std::size_t i = 0; i < arr_.size(); ++i) {
                pad(out, indent, depth + 1);
                arr_[i].dump_to(out, indent, depth + 1);
                if (i + 1 < arr_.size()) out += ',';
                out += nl;
            }
            pad(out, indent, depth);
            out += ']';
            break;
        }
        case Kind::Obj: {
            if (obj_.empty()) { out += "{}"; break; }
            out += '{';
            out += nl;
            for (std::size_t i = 0; i < obj_.size(); ++i) {
                pad(out, indent, depth + 1);
                escape_into(out, obj_[i].first);
                out += indent > 0 ? ": " : ":";
                obj_[i].second.dump_to(out, indent, depth + 1);
                if (i + 1 < obj_.size()) out += ',';
                out += nl;
            }
            pad(out, indent, depth);
            out += '}';
            break;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    out += '\n';
    return out;
}

std::vector<std::string> sign_conventions() {
    return {
        "boost parameter: the hyperbolic block of h_{a,y} is [[cosh y, sinh y],[sinh y, cosh y]] "
        "while the boost basis matrix carries -y in those slots, so exp(y*boost) = h_{1,-y}",
        "dilation action: exp(eps*dilation) sends f(t,x) to e^{s*eps} f(t, e^{-eps} x)",
        "special conformal action: the lower-nilpotent flow acts by (g.f)(t,x) = "
        "delta_i(eps*x)^{+s} f(t, gamma_i(eps,x)) with exponent +s; this sign is forced by the "
        "big-cell character computation and keeps harmonic-power stationary solutions invariant",
        "algebra image of the boost: sum_i x_i d/dx_i - s*u d/du; at r = s = 2/(m-1) the u-term "
        "sign is opposite to the classical scaling generator sum_i x_i d/dx_i + (2/(m-1)) u d/du, "
        "as required for the bracket relations to close",
        "nu labeling: nu_i^+ = E_{n+1,i} - E_{i,n+1} + E_{n+2,i} + E_{i,n+2} integrates to the "
        "upper-nilpotent translation L(eps e_i) and maps to -d/dx_i; nu_i^- (minus signs on the "
        "last two terms) integrates to the lower-nilpotent flow and maps to the special conformal "
        "field",
    };
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw InvalidArgument("short write to '" + path + "'");
}

std::string csv_table(int n, const std::vector<std::vector<double>>& rows) {
    std::string out = "t";
    for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
    out += ",value\n";
    for (const auto& row : rows) {
        if (int(row.size()) != n + 2) throw ArityMismatch("csv row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::string cell = format_real(row[i]);
            out += cell;
        }
        out += '\n';
    }
    return out;
}

} // namespace pmesym
