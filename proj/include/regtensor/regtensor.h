#ifndef REGTENSOR_REGTENSOR_H
#define REGTENSOR_REGTENSOR_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(REGTENSOR_BUILDING)
#    define REGTENSOR_API __declspec(dllexport)
#  else
#    define REGTENSOR_API __declspec(dllimport)
#  endif
#else
#  define REGTENSOR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum regtensor_status {
  REGTENSOR_OK = 0,
  REGTENSOR_ERR_SYNTAX = 1,
  REGTENSOR_ERR_UNKNOWN_NAME = 2,
  REGTENSOR_ERR_DUPLICATE_NAME = 3,
  REGTENSOR_ERR_INVALID_ARGUMENT = 4,
  REGTENSOR_ERR_IO = 5,
  /* The session ran, but some statements produced error records. */
  REGTENSOR_ERR_QUERY = 6,
  /* Some corpus cases disagree with their golden files. */
  REGTENSOR_ERR_MISMATCH = 7,
  REGTENSOR_ERR_INTERNAL = 8
} regtensor_status;

typedef enum regtensor_format {
  REGTENSOR_FORMAT_TEXT = 0,
  REGTENSOR_FORMAT_JSON = 1
} regtensor_format;

/* A parsed session; immutable after parsing. */
typedef struct regtensor_session regtensor_session;

REGTENSOR_API const char *regtensor_version(void);
REGTENSOR_API const char *regtensor_status_name(regtensor_status status);

/* Message of the last failing call on this thread, or "". */
REGTENSOR_API const char *regtensor_last_error(void);

REGTENSOR_API regtensor_status regtensor_session_parse(const char *text, regtensor_session **out);
REGTENSOR_API void regtensor_session_free(regtensor_session *session);
REGTENSOR_API size_t regtensor_session_query_count(const regtensor_session *session);

/* Canonical text of the session; free with regtensor_string_free. */
REGTENSOR_API regtensor_status regtensor_session_canonical(const regtensor_session *session, char **out);

/* Runs every statement; *report receives the rendered output even when
   some statements fail (status REGTENSOR_ERR_QUERY, count in *errors). */
REGTENSOR_API regtensor_status regtensor_session_run(const regtensor_session *session, regtensor_format format,
                                                     char **report, size_t *errors);

/* Runs the bundled example sessions of a corpus directory. */
REGTENSOR_API regtensor_status regtensor_corpus_run(const char *dir, const char *filter, regtensor_format format,
                                                    char **report, size_t *failures);

REGTENSOR_API void regtensor_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* REGTENSOR_REGTENSOR_H */
