#include <filesystem>

#include <gtest/gtest.h>

#include "kitaev/error.hpp"
#include "kitaev/io.hpp"

using kitaev::InvalidArgument;
using kitaev::io::KeyValueConfig;

TEST(KeyValueConfig, ParsesCommentsAndWhitespace) {
  const auto c = KeyValueConfig::parse(
      "# header\n"
      "jx = 1.0\n"
      "  jy=0.5   # trailing\n"
      "\n"
      "boundary = open\r\n");
  EXPECT_EQ(c.values().size(), 3U);
  EXPECT_DOUBLE_EQ(*c.get_double("jx"), 1.0);
  EXPECT_DOUBLE_EQ(*c.get_double("jy"), 0.5);
  EXPECT_EQ(*c.get("boundary"), "open");
  EXPECT_FALSE(c.get("hz").has_value());
  EXPECT_FALSE(c.get_double("hz").has_value());
}

TEST(KeyValueConfig, LaterKeysOverride) {
  auto c = KeyValueConfig::parse("n = 4\nn = 8\n");
  EXPECT_EQ(*c.get_int("n"), 8);
  c.set("n", "12");
  EXPECT_EQ(*c.get_int("n"), 12);
}

TEST(KeyValueConfig, RejectsMalformedInput) {
  EXPECT_THROW(KeyValueConfig::parse("no equals sign\n"), InvalidArgument);
  EXPECT_THROW(KeyValueConfig::parse(" = 3\n"), InvalidArgument);
  const auto c = KeyValueConfig::parse("a = 1.5x\nb = 2.5\nc = \n");
  EXPECT_THROW(c.get_double("a"), InvalidArgument);
  EXPECT_THROW(c.get_int("b"), InvalidArgument);
  EXPECT_THROW(c.get_double("c"), InvalidArgument);
}

TEST(FileIo, RoundTripAndMissingFile) {
  const auto path =
      (std::filesystem::temp_directory_path() / "kitaev_io_roundtrip.txt").string();
  kitaev::io::write_file(path, "x = 3\n");
  EXPECT_EQ(kitaev::io::read_file(path), "x = 3\n");
  EXPECT_EQ(*KeyValueConfig::load(path).get_int("x"), 3);
  std::filesystem::remove(path);
  EXPECT_THROW(kitaev::io::read_file(path), InvalidArgument);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(kitaev::io::format_double(0.1), "0.1");
  EXPECT_EQ(kitaev::io::format_double(-2.5), "-2.5");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(kitaev::io::format_double(x)), x);
}
