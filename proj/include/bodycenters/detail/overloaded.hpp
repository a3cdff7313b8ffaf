#pragma once

namespace bodycenters::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace bodycenters::detail
