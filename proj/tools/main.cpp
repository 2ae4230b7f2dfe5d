#include "bouquet/cli.hpp"

int main(int argc, char** argv) { return bouquet::run_cli(argc, argv); }
