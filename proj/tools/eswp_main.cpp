#include "eswp/cli.hpp"

int main(int argc, char** argv) { return eswp::cli_main(argc, argv); }
