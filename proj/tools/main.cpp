#include "sidon/cli.hpp"

int main(int argc, char** argv) { return sidon::cli_main(argc, argv); }
