#include "painleve/cli.hpp"

int main(int argc, char** argv) { return painleve::cli::main(argc, argv); }
