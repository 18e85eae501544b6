#include "cli.hpp"

int main(int argc, char** argv) { return cgmldp::cli::run_cli(argc, argv); }
