#include "qhd/cli.hpp"

int main(int argc, char** argv) { return qhd::cli_main(argc, argv); }
