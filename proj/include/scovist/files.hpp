#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "scovist/errors.hpp"

namespace scovist {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) raise(ErrorCode::io_error, "failed reading '" + path + "'");
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) raise(ErrorCode::io_error, "failed writing '" + path + "'");
}

}  // namespace scovist
