#pragma once

// Deterministic report output: an insertion-ordered JSON value with fixed
// 17-significant-digit float formatting, a CSV writer, and the catalogue of
// sign conventions pinned by this implementation (embedded in every report).

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace pmesym {

class Json {
  public:
    enum class Kind { Null, Bool, Int, Real, Str, Arr, Obj };

    Json() : kind_(Kind::Null) {}
    static Json boolean(bool b);
    static Json integer(std::int64_t v);
    static Json real(double v);
    static Json str(std::string s);
    static Json array();
    static Json object();

    Kind kind() const { return kind_; }

    // array ops
    void push_back(Json v);
    std::size_t size() const { return arr_.size(); }
    const Json& at(std::size_t i) const { return arr_.at(i); }

    // object ops (insertion order preserved)
    Json& operator[](const std::string& key);
    bool contains(const std::string& key) const;
    const Json& at(const std::string& key) const;

    bool as_bool() const { return bool_; }
    std::int64_t as_int() const { return int_; }
    double as_real() const;
    const std::string& as_str() const { return str_; }

    std::string dump(int indent = 2) const;

  private:
    void dump_to(std::string& out, int indent, int depth) const;

    Kind kind_;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double real_ = 0.0;
    std::string str_;
    std::vector<Json> arr_;
    std::vector<std::pair<std::string, Json>> obj_;
};

// Formats one double exactly as the JSON writer does ("%.17g").
std::string format_real(double v);

// The conventions this library pins where the source material leaves a sign
// or labeling ambiguous. Single source of truth; embedded in reports.
std::vector<std::string> sign_conventions();

void write_text_file(const std::string& path, const std::string& content);

// rows are (t, x_1..x_n, value); header "t,x1,...,xn,value".
std::string csv_table(int n, const std::vector<std::vector<double>>& rows);

} // namespace pmesym
