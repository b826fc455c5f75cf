#include <doctest.h>

#include "vaxtag/labels.hpp"

using namespace vaxtag;

TEST_CASE("every canonical name round-trips through parse") {
    for (ConcernLabel l : all_labels()) {
        auto parsed = parse_label(label_name(l));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == l);
    }
}

TEST_CASE("parse is case-insensitive and accepts the spaced side effect") {
    CHECK(parse_label("Side-Effect") == ConcernLabel::SideEffect);
    CHECK(parse_label("SIDE EFFECT") == ConcernLabel::SideEffect);
    CHECK(parse_label("side effect") == ConcernLabel::SideEffect);
    CHECK(parse_label("Mandatory") == ConcernLabel::Mandatory);
    CHECK_FALSE(parse_label("sideeffect").has_value());
    CHECK_FALSE(parse_label("").has_value());
    CHECK_FALSE(parse_label("fear").has_value());
}

TEST_CASE("exactly 12 labels in the documented order") {
    REQUIRE(all_labels().size() == 12);
    CHECK(label_name(ConcernLabel::Unnecessary) == "unnecessary");
    CHECK(label_name(ConcernLabel::None) == "none");
    CHECK(static_cast<int>(ConcernLabel::SideEffect) == 8);
}

TEST_CASE("label set basics") {
    LabelSet s;
    CHECK(s.empty());
    s.insert(ConcernLabel::Pharma);
    s.insert(ConcernLabel::Rushed);
    CHECK(s.size() == 2);
    CHECK(s.contains(ConcernLabel::Pharma));
    CHECK_FALSE(s.contains(ConcernLabel::None));
    s.erase(ConcernLabel::Pharma);
    CHECK(s.size() == 1);
}

TEST_CASE("none drops out of normalized multi-label sets") {
    LabelSet s{ConcernLabel::None, ConcernLabel::Political};
    CHECK(s.normalized() == LabelSet{ConcernLabel::Political});

    LabelSet only_none{ConcernLabel::None};
    CHECK(only_none.normalized() == only_none);
}

TEST_CASE("render and parse of space-separated label fields") {
    LabelSet s{ConcernLabel::SideEffect, ConcernLabel::Mandatory, ConcernLabel::Political};
    CHECK(render_labels(s) == "mandatory political side-effect");

    auto parsed = parse_labels("side-effect mandatory political");
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);

    std::string bad;
    CHECK_FALSE(parse_labels("side-effect sideeffect", &bad).has_value());
    CHECK(bad == "sideeffect");

    auto empty = parse_labels("");
    REQUIRE(empty.has_value());
    CHECK(empty->empty());
}

TEST_CASE("label set parse/render round-trips over every subset") {
    for (uint16_t bits = 0; bits < (1u << 12); ++bits) {
        LabelSet s = LabelSet::from_bits(bits);
        auto parsed = parse_labels(render_labels(s));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == s);
    }
}
