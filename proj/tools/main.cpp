#include "commands.hpp"

int main(int argc, char** argv) { return newsdep::cli::run(argc, argv); }
