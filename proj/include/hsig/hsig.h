#ifndef HSIG_HSIG_H
#define HSIG_HSIG_H

/* C interface to the signature library. All handles are opaque; every call
 * that can fail returns an hsig_status and records a message retrievable with
 * hsig_last_error() on the calling thread. */

#include <stddef.h>

#if defined(HSIG_BUILDING_LIBRARY)
#define HSIG_API __attribute__((visibility("default")))
#else
#define HSIG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* 0 on success; otherwise 1 + the library error code (see hsig_status_name). */
typedef int hsig_status;
#define HSIG_OK 0

typedef struct hsig_document hsig_document;
typedef struct hsig_report hsig_report;

typedef struct hsig_run_options {
  const char* form;    /* --form, or NULL */
  const char* ref;     /* --ref, or NULL */
  int use_extension;   /* --ext */
  int json;            /* --json */
  int search;          /* fall back to a reference search when no ref is given */
  size_t pool_budget;  /* --pool-budget */
} hsig_run_options;

HSIG_API const char* hsig_version(void);
HSIG_API const char* hsig_status_name(hsig_status status);
/* Message of the last failing call on this thread ("" if none). */
HSIG_API const char* hsig_last_error(void);

HSIG_API void hsig_run_options_init(hsig_run_options* opts);

HSIG_API hsig_status hsig_document_parse(const char* text, hsig_document** out);
HSIG_API void hsig_document_free(hsig_document* doc);
/* Canonical text; release with hsig_string_free. */
HSIG_API hsig_status hsig_document_serialize(const hsig_document* doc, char** out);
HSIG_API size_t hsig_document_form_count(const hsig_document* doc);
HSIG_API const char* hsig_document_form_name(const hsig_document* doc, size_t index);
HSIG_API void hsig_string_free(char* s);

/* Runs one command. A report is produced even when the command fails; its
 * exit code follows the CLI contract (0 ok, 1 invalid, 2 ktf FAIL,
 * 3 no reference). */
HSIG_API hsig_status hsig_run(const hsig_document* doc, const char* command, const hsig_run_options* opts,
                              hsig_report** out);
HSIG_API int hsig_report_exit_code(const hsig_report* report);
HSIG_API const char* hsig_report_text(const hsig_report* report);
HSIG_API const char* hsig_report_error(const hsig_report* report);
HSIG_API void hsig_report_free(hsig_report* report);

/* Field helpers over Q(sqrt c1)...(sqrt cn); radicands are element strings in
 * the tower below them. */
HSIG_API hsig_status hsig_field_ordering_count(const char* const* radicands, size_t n, size_t* count);
HSIG_API hsig_status hsig_field_sign(const char* const* radicands, size_t n, const char* element, size_t ordering,
                                     int* sign);
/* Canonical form of an element; release with hsig_string_free. */
HSIG_API hsig_status hsig_field_normalize(const char* const* radicands, size_t n, const char* element, char** out);

#ifdef __cplusplus
}
#endif

#endif
