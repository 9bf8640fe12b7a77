#include "smoothlab/cli.hpp"

int main(int argc, char** argv) { return smoothlab::cli_main(argc, argv); }
