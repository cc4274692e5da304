#include "seqwls/harness.hpp"

int main(int argc, char** argv) { return seqwls::cli_main(argc, argv); }
