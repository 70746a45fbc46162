#include "ordmetrics/cli.hpp"

int main(int argc, char** argv) { return ordmetrics::cli_main(argc, argv); }
