#include "hopfdual/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "hopfdual/errors.hpp"

namespace hopfdual::json {

Value Value::boolean(bool b) {
    Value v;
    v.kind_ = Kind::Bool;
    v.b_ = b;
    return v;
}
Value Value::integer(long long x) {
    Value v;
    v.kind_ = Kind::Int;
    v.i_ = x;
    return v;
}
Value Value::number(double x) {
    Value v;
    v.kind_ = Kind::Double;
    v.d_ = x;
    return v;
}
Value Value::str(std::string s) {
    Value v;
    v.kind_ = Kind::String;
    v.s_ = std::move(s);
    return v;
}
Value Value::array() {
    Value v;
    v.kind_ = Kind::Array;
    return v;
}
Value Value::object() {
    Value v;
    v.kind_ = Kind::Object;
    return v;
}

Value& Value::push(Value v) {
    if (kind_ != Kind::Array) fail("BadSpec", "push on non-array JSON value");
    arr_.push_back(std::move(v));
    return *this;
}

Value& Value::set(const std::string& k, Value v) {
    if (kind_ != Kind::Object) fail("BadSpec", "set on non-object JSON value");
    for (auto& [key, val] : obj_)
        if (key == k) {
            val = std::move(v);
            return *this;
        }
    obj_.emplace_back(k, std::move(v));
    return *this;
}

bool Value::as_bool() const {
    if (kind_ != Kind::Bool) fail("BadSpec", "expected JSON boolean");
    return b_;
}
long long Value::as_int() const {
    if (kind_ == Kind::Int) return i_;
    if (kind_ == Kind::Double && d_ == static_cast<long long>(d_)) return static_cast<long long>(d_);
    fail("BadSpec", "expected JSON integer");
}
double Value::as_double() const {
    if (kind_ == Kind::Double) return d_;
    if (kind_ == Kind::Int) return double(i_);
    fail("BadSpec", "expected JSON number");
}
const std::string& Value::as_string() const {
    if (kind_ != Kind::String) fail("BadSpec", "expected JSON string");
    return s_;
}
const std::vector<Value>& Value::items() const {
    if (kind_ != Kind::Array) fail("BadSpec", "expected JSON array");
    return arr_;
}
const std::vector<std::pair<std::string, Value>>& Value::fields() const {
    if (kind_ != Kind::Object) fail("BadSpec", "expected JSON object");
    return obj_;
}
const Value& Value::at(const std::string& key) const {
    const Value* v = find(key);
    if (!v) fail("BadSpec", "missing JSON key '" + key + "'");
    return *v;
}
const Value* Value::find(const std::string& key) const {
    if (kind_ != Kind::Object) fail("BadSpec", "expected JSON object");
    for (const auto& [k, v] : obj_)
        if (k == key) return &v;
    return nullptr;
}
size_t Value::size() const {
    if (kind_ == Kind::Array) return arr_.size();
    if (kind_ == Kind::Object) return obj_.size();
    fail("BadSpec", "size of scalar JSON value");
}

std::string format_double(double v) {
    // "-0" would be parsed back as the integer 0, losing the sign bit; force
    // a float spelling so negative zero survives the round-trip bit-exactly.
    if (v == 0.0 && std::signbit(v)) return "-0.0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Value complex_value(double re, double im) {
    Value v = Value::array();
    v.push(Value::number(re)).push(Value::number(im));
    return v;
}

namespace {
void escape_to(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}
} // namespace

void Value::dump_to(std::string& out, int indent, int depth) const {
    const bool pretty = indent >= 0;
    auto newline = [&](int d) {
        if (!pretty) return;
        out += '\n';
        out.append(size_t(indent) * d, ' ');
    };
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += b_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(i_); break;
        case Kind::Double: out += format_double(d_); break;
        case Kind::String: escape_to(out, s_); break;
        case Kind::Array: {
            out += '[';
            for (size_t i = 0; i < arr_.size(); ++i) {
                if (i) out += pretty ? ", " : ",";
                arr_[i].dump_to(out, -1, depth + 1); // arrays stay on one line
            }
            out += ']';
            break;
        }
        case Kind::Object: {
            out += '{';
            for (size_t i = 0; i < obj_.size(); ++i) {
                if (i) out += ',';
                newline(depth + 1);
                escape_to(out, obj_[i].first);
                out += pretty ? ": " : ":";
                obj_[i].second.dump_to(out, indent, depth + 1);
            }
            if (!obj_.empty()) newline(depth);
            out += '}';
            break;
        }
    }
}

std::string Value::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    return out;
}

namespace {
Value convert(const nlohmann::json& j) {
    using nlohmann::json;
    switch (j.type()) {
        case json::value_t::null: return Value();
        case json::value_t::boolean: return Value::boolean(j.get<bool>());
        case json::value_t::number_integer: return Value::integer(j.get<long long>());
        case json::value_t::number_unsigned: return Value::integer(static_cast<long long>(j.get<unsigned long long>()));
        case json::value_t::number_float: return Value::number(j.get<double>());
        case json::value_t::string: return Value::str(j.get<std::string>());
        case json::value_t::array: {
            Value v = Value::array();
            for (const auto& item : j) v.push(convert(item));
            return v;
        }
        case json::value_t::object: {
            Value v = Value::object();
            for (auto it = j.begin(); it != j.end(); ++it) v.set(it.key(), convert(it.value()));
            return v;
        }
        default: fail("BadSpec", "unsupported JSON node");
    }
}
} // namespace

Value parse(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("BadSpec", "malformed JSON");
    return convert(j);
}

} // namespace hopfdual::json
