#include "cli.hpp"

int main(int argc, char** argv) { return cordiceq::cli::cli_main(argc, argv); }
