#include "summa/cli.hpp"

int main(int argc, char** argv) { return summa::run_cli(argc, argv); }
