#include "commands.hpp"

#include <cstdio>

namespace newsdep::cli {

int run(int, char**) {
    std::fprintf(stderr, "newsdep: commands not wired yet\n");
    return 2;
}

} // namespace newsdep::cli
