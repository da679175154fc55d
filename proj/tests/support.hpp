#pragma once

// Shared fixtures for the unit tests: corpus algebras with their path bases.

#include <filesystem>
#include <memory>
#include <string>

#include "gentle/algebra.hpp"

namespace gentle::testing {

struct Fixture {
  Presentation P;
  std::shared_ptr<const PathBasis> B;
};

inline Fixture corpus(const std::string& name) {
  Fixture f;
  f.P = load_presentation((std::filesystem::path(GENTLE_CORPUS_DIR) / (name + ".alg")).string());
  f.B = std::make_shared<const PathBasis>(f.P);
  return f;
}

}  // namespace gentle::testing
