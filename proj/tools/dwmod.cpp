#include "dwmod/cli.hpp"

int main(int argc, char** argv) { return dwmod::cli_main(argc, argv); }
