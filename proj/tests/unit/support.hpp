#pragma once

#include <gtest/gtest.h>

#include "hhl_lab/error.hpp"

// Asserts that `stmt` throws hhl_lab::Error with the given kind.
#define EXPECT_THROW_KIND(stmt, expected_kind)                                   \
  do {                                                                           \
    try {                                                                        \
      stmt;                                                                      \
      ADD_FAILURE() << "expected " #expected_kind " from: " #stmt;               \
    } catch (const hhl_lab::Error& err__) {                                      \
      EXPECT_EQ(err__.kind(), hhl_lab::ErrorKind::expected_kind) << err__.what(); \
    }                                                                            \
  } while (0)
