#include <stdio.h>
#include <string.h>

#include "ep_dlog.h"

static int check(EpDlogStatus status, EpDlogStatus expected, const char *what) {
  if (status != expected) {
    fprintf(stderr, "%s: status %d, expected %d (%s)\n", what, (int)status, (int)expected,
            ep_dlog_last_error());
    return 1;
  }
  return 0;
}

int main(void) {
  EpDlogElement *g = NULL, *h = NULL, *bad = NULL;
  EpDlogTranscript *t = NULL;
  char *x = NULL;
  int failures = 0;

  failures += check(ep_dlog_element_parse("3", "1,0,0,1,1", &g), EP_DLOG_STATUS_OK, "parse g");
  failures += check(ep_dlog_element_parse("3", "1,0,0,2,1", &h), EP_DLOG_STATUS_OK, "parse h");
  failures += check(ep_dlog_log(g, h, EP_DLOG_ORACLE_POHLIG_HELLMAN, 0, &t), EP_DLOG_STATUS_OK, "log");
  failures += check(ep_dlog_transcript_x(t, &x), EP_DLOG_STATUS_OK, "x");
  if (x == NULL || strcmp(x, "2") != 0) {
    fprintf(stderr, "x = %s, expected 2\n", x ? x : "(null)");
    failures++;
  }
  if (ep_dlog_transcript_zp_dlog_calls(t) != 2) {
    fprintf(stderr, "expected 2 Z_p logs\n");
    failures++;
  }
  failures += check(ep_dlog_element_parse("4", "1,0,0,0,1", &bad), EP_DLOG_STATUS_INVALID_INPUT, "parse p=4");
  failures += check(ep_dlog_element_parse("3", NULL, &bad), EP_DLOG_STATUS_NULL_POINTER, "parse null");

  ep_dlog_string_free(x);
  ep_dlog_transcript_free(t);
  ep_dlog_element_free(g);
  ep_dlog_element_free(h);
  if (failures == 0) {
    printf("ok\n");
  }
  return failures == 0 ? 0 : 1;
}
