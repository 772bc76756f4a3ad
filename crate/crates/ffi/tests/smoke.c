#include <stdio.h>
#include <string.h>
#include "plectic.h"

static const char *DOC =
    "chart R3 (x, y, z)\n"
    "form omega = dx^dy^dz\n"
    "structure omega\n"
    "form a = x*dy\n"
    "form b = y*dz\n"
    "form c = z*dx\n"
    "jacobiator a b c\n";

int main(void) {
    PlDocument *doc = NULL;
    PlReport *report = NULL;
    char *text = NULL;
    if (pl_document_parse(DOC, &doc) != PL_STATUS_OK) return 10;
    if (pl_document_run(doc, 1, &report) != PL_STATUS_OK) return 11;
    if (!pl_report_passed(report) || pl_report_len(report) != 1) return 12;
    if (pl_report_machine_text(report, &text) != PL_STATUS_OK) return 13;
    fputs(text, stdout);
    pl_string_free(text);
    pl_report_free(report);
    pl_document_free(doc);
    if (pl_document_parse("chart R3 (x, y, z)\nform a = 2x\n", &doc) != PL_STATUS_PARSE_ERROR) return 14;
    if (doc != NULL || strstr(pl_last_error_message(), "line 2") == NULL) return 15;
    return 0;
}
