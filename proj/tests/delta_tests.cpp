#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "ljs/delta.hpp"
#include "ljs/print.hpp"

using namespace ljs;

namespace {
Constant run1(PrimOp op, ExprPtr a) {
    DeltaResult r = delta(op, {std::move(a)});
    REQUIRE(r.constant);
    return *r.constant;
}
Constant run2(PrimOp op, ExprPtr a, ExprPtr b) {
    DeltaResult r = delta(op, {std::move(a), std::move(b)});
    REQUIRE(r.constant);
    return *r.constant;
}
}  // namespace

TEST_CASE("arithmetic and coercion primitives") {
    CHECK(run2(PrimOp::Add, make_number(10), make_number(7)) == Constant::number(17));
    CHECK(run2(PrimOp::StrCat, make_string("10"), make_string("7")) == Constant::string("107"));
    CHECK(run1(PrimOp::StrToNum, make_string("7")) == Constant::number(7));
    CHECK(std::isnan(run2(PrimOp::Add, make_number(0), make_number(std::nan(""))).as_number()));
    CHECK(run2(PrimOp::Mod, make_number(5.5), make_number(2)) == Constant::number(1.5));
    CHECK(run2(PrimOp::Mod, make_number(-5), make_number(2)) == Constant::number(-1));
    CHECK(run1(PrimOp::NumToStr, make_number(10)) == Constant::string("10"));
    CHECK(run1(PrimOp::Floor, make_number(2.7)) == Constant::number(2));
}

TEST_CASE("typeof covers every value class") {
    CHECK(run1(PrimOp::TypeOf, make_number(10)) == Constant::string("number"));
    CHECK(run1(PrimOp::TypeOf, make_string("s")) == Constant::string("string"));
    CHECK(run1(PrimOp::TypeOf, make_boolean(true)) == Constant::string("boolean"));
    CHECK(run1(PrimOp::TypeOf, make_undefined()) == Constant::string("undefined"));
    CHECK(run1(PrimOp::TypeOf, make_null()) == Constant::string("object"));
    CHECK(run1(PrimOp::TypeOf, make_loc(Location{3})) == Constant::string("object"));
    CHECK(run1(PrimOp::TypeOf, make_object({})) == Constant::string("object"));
    CHECK(run1(PrimOp::TypeOf, make_func({"x"}, make_id("x"))) == Constant::string("function"));
}

TEST_CASE("physical equality") {
    CHECK(run2(PrimOp::StxEq, make_string("a"), make_string("a")) == Constant::boolean(true));
    CHECK(run2(PrimOp::StxEq, make_number(std::nan("")), make_number(std::nan(""))) ==
          Constant::boolean(false));
    CHECK(run2(PrimOp::StxEq, make_number(0.0), make_number(-0.0)) == Constant::boolean(true));
    CHECK(run2(PrimOp::StxEq, make_loc(Location{1}), make_loc(Location{1})) ==
          Constant::boolean(true));
    CHECK(run2(PrimOp::StxEq, make_loc(Location{1}), make_loc(Location{2})) ==
          Constant::boolean(false));
    // Raw compound values compare unequal.
    CHECK(run2(PrimOp::StxEq, make_object({}), make_object({})) == Constant::boolean(false));
}

TEST_CASE("to-boolean") {
    CHECK(run1(PrimOp::ToBool, make_number(0)) == Constant::boolean(false));
    CHECK(run1(PrimOp::ToBool, make_number(std::nan(""))) == Constant::boolean(false));
    CHECK(run1(PrimOp::ToBool, make_string("")) == Constant::boolean(false));
    CHECK(run1(PrimOp::ToBool, make_undefined()) == Constant::boolean(false));
    CHECK(run1(PrimOp::ToBool, make_null()) == Constant::boolean(false));
    CHECK(run1(PrimOp::ToBool, make_boolean(false)) == Constant::boolean(false));
    CHECK(run1(PrimOp::ToBool, make_number(3)) == Constant::boolean(true));
    CHECK(run1(PrimOp::ToBool, make_string("0")) == Constant::boolean(true));
    CHECK(run1(PrimOp::ToBool, make_loc(Location{0})) == Constant::boolean(true));
    CHECK(run1(PrimOp::ToBool, make_object({})) == Constant::boolean(true));
}

TEST_CASE("object primitives") {
    ExprPtr obj = make_object({{"a", make_number(1)}, {"b", make_number(2)}});
    CHECK(run2(PrimOp::HasOwnField, obj, make_string("a")) == Constant::boolean(true));
    CHECK(run2(PrimOp::HasOwnField, obj, make_string("z")) == Constant::boolean(false));
    CHECK(run1(PrimOp::FieldNames, obj) == Constant::string("a,b"));
    CHECK(run1(PrimOp::FirstField, obj) == Constant::string("a"));
    CHECK(run1(PrimOp::FirstField, make_object({})) == Constant::undefined());
    CHECK(run1(PrimOp::IsLoc, make_loc(Location{0})) == Constant::boolean(true));
    CHECK(run1(PrimOp::IsLoc, make_number(1)) == Constant::boolean(false));
}

TEST_CASE("relationals on numbers and strings") {
    CHECK(run2(PrimOp::Lt, make_number(1), make_number(2)) == Constant::boolean(true));
    CHECK(run2(PrimOp::Lt, make_number(std::nan("")), make_number(2)) ==
          Constant::boolean(false));
    CHECK(run2(PrimOp::Ge, make_number(std::nan("")), make_number(2)) ==
          Constant::boolean(false));
    CHECK(run2(PrimOp::Lt, make_string("abc"), make_string("abd")) == Constant::boolean(true));
    DeltaResult mixed = delta(PrimOp::Lt, {make_number(1), make_string("2")});
    CHECK_FALSE(mixed.constant);
    CHECK(mixed.error != nullptr);
}

TEST_CASE("wrong-type inputs yield error values, never throws") {
    DeltaResult r = delta(PrimOp::Add, {make_string("1"), make_number(2)});
    REQUIRE_FALSE(r.constant);
    REQUIRE(r.error);
    CHECK(is_value(*r.error));
    const auto* obj = r.error->as<ObjectExpr>();
    REQUIRE(obj);
    CHECK(obj->fields[0].first == "type");
}

TEST_CASE("delta is pure: double invocation agrees") {
    std::mt19937_64 rng(21);
    static const PrimOp ops[] = {PrimOp::Add, PrimOp::StrCat, PrimOp::StxEq, PrimOp::Lt,
                                 PrimOp::ToBool, PrimOp::TypeOf, PrimOp::HasOwnField,
                                 PrimOp::FieldNames, PrimOp::FirstField, PrimOp::NumToStr,
                                 PrimOp::StrToNum, PrimOp::Floor, PrimOp::IsNaN, PrimOp::IsLoc,
                                 PrimOp::Mod, PrimOp::Div};
    for (int i = 0; i < 2000; ++i) {
        PrimOp op = ops[rng() % (sizeof(ops) / sizeof(ops[0]))];
        Store store;
        store.alloc(make_number(1));
        std::vector<ExprPtr> args;
        for (int a = 0; a < prim_arity(op); ++a) {
            args.push_back(testgen::gen_value(rng, store, 2));
        }
        DeltaResult r1 = delta(op, args);
        DeltaResult r2 = delta(op, args);
        CHECK(static_cast<bool>(r1.constant) == static_cast<bool>(r2.constant));
        if (r1.constant) {
            CHECK(*r1.constant == *r2.constant);
        } else {
            CHECK(expr_equal(r1.error, r2.error));
        }
    }
}
