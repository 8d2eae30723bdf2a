#include <stdio.h>
#include <string.h>

#include "naw.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    NawGroup *g = NULL;
    size_t order = 0;
    CHECK(naw_group_new("CP(E(2,0),E(2,0))", &g) == NAW_STATUS_OK);
    CHECK(naw_group_order(g, &order) == NAW_STATUS_OK);
    CHECK(order == 32);
    naw_group_free(g);

    CHECK(naw_group_new("E(2", &g) == NAW_STATUS_PARSE);
    CHECK(strstr(naw_last_error_message(), "parse error") != NULL);

    const char *argv[] = {"egroup", "--d", "3", "--j", "1", "--verify"};
    NawCertificate *cert = NULL;
    int32_t code = -1;
    size_t pass = 0, fail = 0, inconclusive = 0;
    char *json = NULL;
    CHECK(naw_run(argv, 6, &cert) == NAW_STATUS_OK);
    CHECK(naw_certificate_exit_code(cert, &code) == NAW_STATUS_OK);
    CHECK(code == 0);
    CHECK(naw_certificate_counts(cert, &pass, &fail, &inconclusive) == NAW_STATUS_OK);
    CHECK(pass == 8 && fail == 0 && inconclusive == 0);
    CHECK(naw_certificate_json(cert, &json) == NAW_STATUS_OK);
    CHECK(strstr(json, "\"command\": \"egroup\"") != NULL);
    naw_string_free(json);
    naw_certificate_free(cert);

    printf("ok %s\n", naw_version());
    return 0;
}
