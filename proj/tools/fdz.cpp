#include "cli.hpp"

int main(int argc, char** argv) { return fdz::cli::run(argc, argv, std::cout, std::cerr); }
