#include <stdio.h>
#include "treepart.h"

int main(void) {
    size_t edges[] = {0, 1, 1, 2, 2, 3};
    TpGraph *g = NULL;
    TpPartition *p = NULL;
    if (tp_graph_from_edges(4, edges, 3, &g) != TP_STATUS_OK) {
        fprintf(stderr, "%s\n", tp_last_error());
        return 1;
    }
    TpStatus st = tp_decompose(g, 2, &p);
    if (st == TP_STATUS_OK) {
        printf("width %zu over %zu bags\n", tp_partition_width(p), tp_partition_num_bags(p));
        tp_partition_free(p);
    }
    tp_graph_free(g);
    return st == TP_STATUS_OK ? 0 : 1;
}
