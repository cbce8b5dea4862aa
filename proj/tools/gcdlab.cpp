#include "gcdlab/cli.hpp"

int main(int argc, char** argv) { return gcdlab::cli_main(argc, argv); }
