// Copyright 2026 The BITE Tokenizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Stable C boundary for foreign-language bindings. Every request and
// response is a UTF-8 JSON document.
//
// Responses are either a result object or {"error": {"code", "message"}},
// where code is an absl status code name such as "INVALID_ARGUMENT".
// Returned strings belong to the caller and are released with
// bite_string_free. A loaded pipeline is immutable and may be shared across
// threads.

#ifndef BITE_C_API_H_
#define BITE_C_API_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bite_pipeline bite_pipeline;

// Library version, statically allocated.
const char* bite_version(void);

// Config keys as in the CLI config file. On failure returns NULL and, when
// error_json is non-NULL, stores an error document there.
bite_pipeline* bite_pipeline_load(const char* config_json, char** error_json);
void bite_pipeline_free(bite_pipeline* pipeline);

// {"text", "mode"?} -> {"symbols", "ids"}
char* bite_encode(const bite_pipeline* pipeline, const char* request_json);
// {"ids", "mode"?} -> {"tokens", "text"}
char* bite_decode(const bite_pipeline* pipeline, const char* request_json);
// {"text"} -> {"tokens": [{"surface", "tag"}]}
char* bite_tag(const bite_pipeline* pipeline, const char* request_json);
// {"text", "method"?, "k"?, "seed"?, "scorer"?, "retag"?} ->
// {"records": [{"clean", "adversarial", "score"}]}
char* bite_perturb(const bite_pipeline* pipeline, const char* request_json);

void bite_string_free(char* s);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // BITE_C_API_H_
