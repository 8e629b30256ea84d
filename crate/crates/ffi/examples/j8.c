#include <stdio.h>
#include "ellipta.h"

int main(void) {
    EllipPoly *j = NULL;
    if (ellipta_j(8, ELLIP_ROUTE_VIENNOT, &j) != ELLIP_STATUS_OK) {
        fprintf(stderr, "%s\n", ellipta_last_error());
        return 1;
    }
    char *text = NULL;
    ellipta_poly_to_string(j, &text);
    printf("J_8 = %s\n", text);
    ellipta_string_free(text);

    EllipPoly *a = NULL, *b = NULL;
    ellipta_j_even_decomposition(3, &a, &b);
    char *report = NULL;
    ellipta_analyze(j, 3, &report);
    printf("%s\n", report);
    ellipta_string_free(report);

    ellipta_poly_free(a);
    ellipta_poly_free(b);
    ellipta_poly_free(j);
    return 0;
}
