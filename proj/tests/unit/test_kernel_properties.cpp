#include "zreg/kernel/properties.hpp"

#include <gtest/gtest.h>

using namespace zreg;

TEST(KernelProperties, ThousandCasesEach) {
    auto all = kernel_properties(1000);
    ASSERT_EQ(all.size(), 5u);
    for (const auto& p : all) {
        EXPECT_EQ(p.cases, 1000);
        EXPECT_TRUE(p.pass()) << p.name << ": " << p.failures << " failures, first " << p.first_failure;
    }
}

TEST(KernelProperties, StreamsAreReproducible) {
    RandomKernel a(9), b(9);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(a.cyclotomic(12), b.cyclotomic(12));
}
