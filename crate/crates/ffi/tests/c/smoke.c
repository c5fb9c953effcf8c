#include <stdio.h>
#include <string.h>

#include "ringel.h"

#define CHECK(cond)                                            \
    do {                                                       \
        if (!(cond)) {                                         \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond); \
            return 1;                                          \
        }                                                      \
    } while (0)

int main(void) {
    RingelAlgebra *k = NULL;
    RingelAlgebra *e = NULL;
    size_t dim = 0, len = 0;
    size_t dims[8];
    bool ordered = false, pass = false;

    CHECK(ringel_algebra_knorrer(5, 2, &k) == RINGEL_STATUS_OK);
    CHECK(ringel_algebra_dim(k, &dim) == RINGEL_STATUS_OK && dim == 5);
    CHECK(ringel_ideal_class_dims(k, dims, 8, &len) == RINGEL_STATUS_OK);
    CHECK(len == 3 && dims[0] == 5 && dims[1] == 2 && dims[2] == 1);
    CHECK(ringel_is_ideally_ordered(k, &ordered) == RINGEL_STATUS_OK && ordered);
    CHECK(ringel_endomorphism_algebra(k, &e) == RINGEL_STATUS_OK);
    CHECK(ringel_algebra_dim(e, &dim) == RINGEL_STATUS_OK && dim == 19);
    CHECK(ringel_verify_duality(k, &pass, &dim) == RINGEL_STATUS_OK && pass && dim == 23);

    RingelAlgebra *bad = NULL;
    CHECK(ringel_algebra_from_dsl("algebra A\nvertex 1\narrow x : 1 -> 2\n", 8, &bad) == RINGEL_STATUS_PARSE);
    CHECK(bad == NULL);
    CHECK(strstr(ringel_last_error(), "line 3") != NULL);

    ringel_algebra_free(e);
    ringel_algebra_free(k);
    printf("ok %s\n", ringel_version());
    return 0;
}
