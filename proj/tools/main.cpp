#include "simplex_interp/cli.hpp"

int main(int argc, char** argv) { return simplex_interp::cli::run(argc, argv); }
