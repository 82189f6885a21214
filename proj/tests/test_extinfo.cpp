#include <gtest/gtest.h>

#include "ramify/extinfo.hpp"

using namespace ramify;

namespace {

ExtensionDescriptor desc(long n, long e, long f, long p, bool sep = true) {
  return make_descriptor({"test", n, e, f, p, sep, std::nullopt, std::nullopt, false, std::nullopt});
}

ExtensionDescriptor with_groups(long n, long e, long f, long p, long den) {
  return make_descriptor({"test", n, e, f, p, true, ValueGroup::standard(1), ValueGroup::cyclic(make_q(1, den)),
                          false, std::nullopt});
}

}  // namespace

TEST(ExtInfo, Defectless) {
  EXPECT_TRUE(is_defectless(desc(6, 3, 2, 5)));
  EXPECT_FALSE(is_defectless(desc(2, 1, 1, 2)));
  EXPECT_TRUE(is_defectless(desc(1, 1, 1, 2)));
  EXPECT_EQ(desc(2, 1, 1, 2).defect(), 2);
}

TEST(ExtInfo, Tame) {
  EXPECT_TRUE(is_tame(desc(6, 3, 2, 5)));
  EXPECT_FALSE(is_tame(desc(5, 5, 1, 5)));
  EXPECT_FALSE(is_tame(desc(2, 1, 1, 2)));
  EXPECT_FALSE(is_tame(desc(2, 1, 2, 2, false)));
}

TEST(ExtInfo, UnramifiedAndImmediate) {
  EXPECT_TRUE(is_unramified(desc(3, 1, 3, 3)));
  EXPECT_FALSE(is_unramified(desc(2, 2, 1, 3)));
  EXPECT_TRUE(is_unramified(desc(1, 1, 1, 3)));
  EXPECT_TRUE(is_immediate(desc(2, 1, 1, 2)));
  EXPECT_FALSE(is_immediate(desc(2, 1, 2, 3)));
  EXPECT_TRUE(is_immediate(desc(1, 1, 1, 3)));
}

TEST(ExtInfo, Pretame) {
  EXPECT_TRUE(pretame_check(with_groups(6, 6, 1, 5, 6)));
  EXPECT_FALSE(pretame_check(with_groups(5, 5, 1, 5, 5)));
  ExtensionDescriptor defect = make_descriptor({"defect", 2, 1, 1, 2, true, ValueGroup::standard(1),
                                                ValueGroup::standard(1), true, false});
  EXPECT_FALSE(pretame_check(defect));
  EXPECT_THROW(pretame_check(desc(2, 1, 1, 3)), precondition_error);
}

TEST(ExtInfo, FundamentalInequality) {
  EXPECT_TRUE(fundamental_inequality_check(desc(4, 2, 2, 3)));
  EXPECT_THROW(desc(2, 2, 2, 3), precondition_error);
  EXPECT_THROW(desc(0, 1, 1, 3), precondition_error);
  EXPECT_THROW(desc(2, 1, 1, 4), precondition_error);
  // Value-group index must equal e.
  EXPECT_THROW(with_groups(6, 6, 1, 5, 3), precondition_error);
  // Henselian normal extensions need a defect that is a power of p.
  EXPECT_THROW(make_descriptor({"x", 3, 1, 1, 2, true, std::nullopt, std::nullopt, true, std::nullopt}),
               precondition_error);
}

TEST(ExtInfo, HenselianDefectlessOverride) {
  ExtensionDescriptor d = make_descriptor({"x", 2, 1, 1, 2, true, ValueGroup::standard(1),
                                           ValueGroup::standard(1), false, true});
  EXPECT_TRUE(is_defectless(d));
  EXPECT_EQ(d.defect(), 1);
  EXPECT_TRUE(pretame_check(d));
}
