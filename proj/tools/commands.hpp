#pragma once

namespace newsdep::cli {

int run(int argc, char** argv);

} // namespace newsdep::cli
