#include "cws/io.hpp"

int main(int argc, char** argv) { return cws::run_cli(argc, argv); }
