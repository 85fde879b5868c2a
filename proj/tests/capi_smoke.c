/* The public header compiles as C and the library links from C. */
#include <bieigen/bieigen.h>

#include <stdio.h>

int main(void) {
  bieigen_map* map = NULL;
  bieigen_options opts;
  char* out = NULL;
  int status;
  bieigen_options_init(&opts);
  opts.samples = 8;
  status = bieigen_map_from_catalog("great_circle_S2", &map);
  if (status != BIEIGEN_OK) {
    fprintf(stderr, "%s\n", bieigen_last_error());
    return 1;
  }
  status = bieigen_verify(map, "t1", &opts, &out);
  printf("%s\n", out);
  bieigen_string_free(out);
  bieigen_map_free(map);
  return status == BIEIGEN_OK ? 0 : 1;
}
