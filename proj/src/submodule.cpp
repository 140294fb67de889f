#include "gll/submodule.hpp"

namespace gll {

template class BasicSubmodule<NoPayload>;

}  // namespace gll
