#pragma once

#include <stdexcept>
#include <string>

namespace ent {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Operand width unsupported (odd, or outside [4, 32]).
class width_error : public error {
 public:
  explicit width_error(const std::string& what) : error(what) {}
};

// Value outside the representable range of the requested width.
class range_error : public error {
 public:
  explicit range_error(const std::string& what) : error(what) {}
};

// Matrix dimension mismatch or non-positive dimensions.
class shape_error : public error {
 public:
  explicit shape_error(const std::string& what) : error(what) {}
};

// Invalid architecture configuration (array size, mode, clock).
class config_error : public error {
 public:
  explicit config_error(const std::string& what) : error(what) {}
};

// Cost table is missing a coefficient or failed to parse.
class table_error : public error {
 public:
  explicit table_error(const std::string& what) : error(what) {}
};

// Malformed or inconsistent layer descriptor.
class layer_error : public error {
 public:
  explicit layer_error(const std::string& what) : error(what) {}
};

// File could not be read or written.
class io_error : public error {
 public:
  explicit io_error(const std::string& what) : error(what) {}
};

}  // namespace ent
