#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hopfdual::json {

/// Minimal JSON document type with insertion-ordered objects and doubles
/// printed with 17 significant digits, so identical inputs produce
/// byte-identical reports and every double round-trips exactly.
class Value {
public:
    enum class Kind { Null, Bool, Int, Double, String, Array, Object };

    Value() : kind_(Kind::Null) {}

    static Value boolean(bool b);
    static Value integer(long long v);
    static Value number(double v);
    static Value str(std::string s);
    static Value array();
    static Value object();

    Kind kind() const { return kind_; }
    bool is_null() const { return kind_ == Kind::Null; }

    // Builders
    Value& push(Value v);                       // arrays
    Value& set(const std::string& k, Value v);  // objects, insertion order

    // Accessors (throw BadSpec on type mismatch / missing key)
    bool as_bool() const;
    long long as_int() const;
    double as_double() const;
    const std::string& as_string() const;
    const std::vector<Value>& items() const;
    const std::vector<std::pair<std::string, Value>>& fields() const;
    const Value& at(const std::string& key) const;
    const Value* find(const std::string& key) const;
    size_t size() const;

    std::string dump(int indent = -1) const;

private:
    Kind kind_;
    bool b_ = false;
    long long i_ = 0;
    double d_ = 0.0;
    std::string s_;
    std::vector<Value> arr_;
    std::vector<std::pair<std::string, Value>> obj_;

    void dump_to(std::string& out, int indent, int depth) const;
};

Value parse(const std::string& text); // throws BadSpec on malformed input

std::string format_double(double v); // 17 significant digits

/// [re, im] pair with 17-digit components.
Value complex_value(double re, double im);

} // namespace hopfdual::json
