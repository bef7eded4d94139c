#include "wawk/runtime_value.hpp"

namespace wawk {

RuntimeValue RuntimeValue::out_of_range()
{
    RuntimeValue r;
    r.v_ = OutOfRangeTag{};
    return r;
}

RuntimeValue RuntimeValue::integer(std::int64_t v)
{
    RuntimeValue r;
    r.v_ = v;
    return r;
}

RuntimeValue RuntimeValue::string(std::string s)
{
    RuntimeValue r;
    r.v_ = std::move(s);
    return r;
}

RuntimeValue RuntimeValue::list(List items)
{
    RuntimeValue r;
    r.v_ = std::make_shared<List>(std::move(items));
    return r;
}

RuntimeValue RuntimeValue::logic(LogicValue v)
{
    RuntimeValue r;
    r.v_ = std::move(v);
    return r;
}

RuntimeValue::List& RuntimeValue::mutable_list()
{
    auto& p = std::get<std::shared_ptr<List>>(v_);
    if (p.use_count() > 1)
        p = std::make_shared<List>(*p);
    return *p;
}

bool RuntimeValue::truthy() const
{
    switch (kind()) {
    case Kind::Unbound:
    case Kind::OutOfRange:
        return false;
    case Kind::Int:
        return as_int() != 0;
    case Kind::Str:
        return !as_str().empty();
    case Kind::List:
        return !as_list().empty();
    case Kind::Logic:
        return as_logic().truthy();
    }
    return false;
}

std::string RuntimeValue::display() const
{
    switch (kind()) {
    case Kind::Unbound:
        return "<unbound>";
    case Kind::OutOfRange:
        return "<out-of-range>";
    case Kind::Int:
        return std::to_string(as_int());
    case Kind::Str:
        return as_str();
    case Kind::List: {
        std::string s = "[";
        bool first = true;
        for (const auto& item : as_list()) {
            if (!first)
                s += ", ";
            first = false;
            s += item.is(Kind::Str) ? "\"" + item.as_str() + "\"" : item.display();
        }
        return s + "]";
    }
    case Kind::Logic:
        if (auto v = as_logic().to_uint())
            return std::to_string(*v);
        return std::string(as_logic().bits());
    }
    return {};
}

bool operator==(const RuntimeValue& a, const RuntimeValue& b)
{
    if (a.kind() != b.kind())
        return false;
    if (a.is(RuntimeValue::Kind::List))
        return a.as_list() == b.as_list();
    return a.v_ == b.v_;
}

std::string_view to_string(RuntimeValue::Kind kind)
{
    switch (kind) {
    case RuntimeValue::Kind::Unbound: return "unbound";
    case RuntimeValue::Kind::OutOfRange: return "out-of-range";
    case RuntimeValue::Kind::Int: return "int";
    case RuntimeValue::Kind::Str: return "string";
    case RuntimeValue::Kind::List: return "list";
    case RuntimeValue::Kind::Logic: return "logic";
    }
    return "?";
}

} // namespace wawk
