#pragma once

#include <stdexcept>
#include <string>

namespace kmlab {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class NotGcm : public Error {
 public:
  NotGcm(int row, int col, const std::string& why)
      : Error("NotGCM", why + " at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
        row_(row),
        col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

#define KMLAB_ERROR(Name, Kind)                                      \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(Kind, what) {}    \
  };

KMLAB_ERROR(NotSymmetrizable, "NotSymmetrizable")
KMLAB_ERROR(NotDominant, "NotDominant")
KMLAB_ERROR(DepthTooSmall, "DepthTooSmall")
KMLAB_ERROR(EmptyWithinBound, "EmptyWithinBound")
KMLAB_ERROR(AmbientMismatch, "AmbientMismatch")
KMLAB_ERROR(WindowTooSmall, "WindowTooSmall")
KMLAB_ERROR(UnstableLattice, "UnstableLattice")
KMLAB_ERROR(UsageError, "UsageError")

#undef KMLAB_ERROR

}  // namespace kmlab
