#include "ovl/cli.hpp"

int main(int argc, char** argv) { return ovl::cli::run(argc, argv); }
