#include "osculant/cli.hpp"

int main(int argc, char** argv) { return osculant::cli::run_cli(argc, argv); }
