#include "sipd/cli.hpp"

int main(int argc, char** argv) { return sipd::cli::run_cli(argc, argv); }
