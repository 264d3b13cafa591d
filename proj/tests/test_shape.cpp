#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tenkit/errors.hpp"
#include "tenkit/shape.hpp"

using tenkit::Shape;
using tenkit::Truncation;

TEST_SUITE("shape") {
  TEST_CASE("extents, strides, and element count") {
    Shape s({20, 20, 2000});
    CHECK(s.order() == 3);
    CHECK(s.extent(1) == 20);
    CHECK(s.extent(3) == 2000);
    CHECK(s.element_count() == 800000);
    CHECK(s.stride(1) == 1);
    CHECK(s.stride(2) == 20);
    CHECK(s.stride(3) == 400);
    CHECK(s.to_string() == "20x20x2000");
  }

  TEST_CASE("order-1 shape") {
    Shape s({7});
    CHECK(s.order() == 1);
    CHECK(s.stride(1) == 1);
    CHECK(s.element_count() == 7);
  }

  TEST_CASE("mode out of range") {
    Shape s({3, 4});
    CHECK_THROWS_AS(s.extent(0), tenkit::InvalidModeError);
    CHECK_THROWS_AS(s.extent(3), tenkit::InvalidModeError);
    CHECK_THROWS_AS(s.stride(5), tenkit::InvalidModeError);
  }

  TEST_CASE("degenerate shapes rejected") {
    CHECK_THROWS_AS(Shape({}), tenkit::Error);
    CHECK_THROWS_AS(Shape({4, 0, 3}), tenkit::Error);
  }

  TEST_CASE("flat offsets follow column-major layout") {
    tenkit::DenseTensor t = testutil::counting_tensor({2, 3, 4});
    CHECK(t.at({0, 0, 0}) == 1.0);
    CHECK(t.at({1, 0, 0}) == 2.0);
    CHECK(t.at({0, 1, 0}) == 3.0);
    CHECK(t.at({0, 0, 1}) == 7.0);
    CHECK(t.at({1, 2, 3}) == 24.0);
  }

  TEST_CASE("truncation validation") {
    Shape s({6, 7, 8});
    Truncation ok{{2, 7, 1}};
    CHECK_NOTHROW(ok.validate(s));

    Truncation zero{{2, 0, 1}};
    CHECK_THROWS_AS(zero.validate(s), tenkit::RankTooLargeError);

    Truncation over{{2, 9, 1}};
    CHECK_THROWS_AS(over.validate(s), tenkit::RankTooLargeError);

    Truncation short_list{{2, 3}};
    CHECK_THROWS_AS(short_list.validate(s), tenkit::DimensionMismatchError);
  }

  TEST_CASE("truncation errors name the offending mode") {
    Shape s({6, 7, 8});
    Truncation over{{2, 9, 1}};
    try {
      over.validate(s);
      FAIL("expected RankTooLargeError");
    } catch (const tenkit::RankTooLargeError& e) {
      CHECK(std::string(e.what()).find("mode 2") != std::string::npos);
    }
  }

  TEST_CASE("error categories map to the documented exit classes") {
    CHECK(tenkit::InvalidModeError("x").category() ==
          tenkit::ErrorCategory::kUsage);
    CHECK(tenkit::DimensionMismatchError("x").category() ==
          tenkit::ErrorCategory::kUsage);
    CHECK(tenkit::ZeroReferenceError("x").category() ==
          tenkit::ErrorCategory::kUsage);
    CHECK(tenkit::RankTooLargeError("x").category() ==
          tenkit::ErrorCategory::kNumerical);
    CHECK(tenkit::SingularGramError("x").category() ==
          tenkit::ErrorCategory::kNumerical);
    CHECK(tenkit::DegenerateInitError("x").category() ==
          tenkit::ErrorCategory::kNumerical);
    CHECK(tenkit::NoConvergenceError("x").category() ==
          tenkit::ErrorCategory::kNumerical);
    CHECK(tenkit::IoError("x").category() == tenkit::ErrorCategory::kIo);
    CHECK(tenkit::FormatError("x").category() == tenkit::ErrorCategory::kIo);
  }
}
