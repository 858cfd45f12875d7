#include <stdio.h>
#include <string.h>

#include "arclimit.h"

int main(void) {
    ArclimitMap *map = NULL;
    if (arclimit_map_from_corpus("tent", &map) != ARCLIMIT_STATUS_OK) return 1;

    ArclimitVerdict *verdict = NULL;
    if (arclimit_decide(map, 8, 20, &verdict) != ARCLIMIT_STATUS_OK) return 2;
    if (arclimit_verdict_outcome(verdict) != ARCLIMIT_OUTCOME_NOT_ARC) return 3;

    ArclimitCert *cert = NULL;
    if (arclimit_verdict_certificate(verdict, &cert) != ARCLIMIT_STATUS_OK || cert == NULL) return 4;
    if (arclimit_cert_order(cert) != 1) return 5;
    if (arclimit_cert_verify(map, cert, 20) != ARCLIMIT_STATUS_OK) return 6;

    char *y = NULL;
    if (arclimit_map_eval(map, "2/7", &y) != ARCLIMIT_STATUS_OK || strcmp(y, "4/7") != 0) return 7;
    arclimit_string_free(y);

    if (arclimit_map_eval(map, "2", &y) != ARCLIMIT_STATUS_DOMAIN_ERROR) return 8;
    if (arclimit_last_error() == NULL) return 9;

    printf("ok %s\n", arclimit_version());
    arclimit_cert_free(cert);
    arclimit_verdict_free(verdict);
    arclimit_map_free(map);
    return 0;
}
