#include "algpaths/signature.hpp"

#include <numeric>
#include <sstream>

#include "algpaths/errors.hpp"

namespace algpaths {

std::string ComponentSignature::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ranks[i]);
  }
  return out;
}

ComponentSignature ComponentSignature::from_ranks(std::vector<int> ranks) {
  for (int r : ranks)
    if (r < 0) throw Error(ErrorKind::BadSignature, "negative rank in signature");
  const int m = std::accumulate(ranks.begin(), ranks.end(), 0);
  if (ranks.empty() || m <= 0) throw Error(ErrorKind::BadSignature, "signature must have positive total rank");
  return {std::move(ranks), m};
}

ComponentSignature ComponentSignature::parse(const std::string& text) {
  std::vector<int> ranks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      ranks.push_back(std::stoi(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadSignature, "cannot parse signature '" + text + "'");
    }
  }
  return from_ranks(std::move(ranks));
}

}  // namespace algpaths
