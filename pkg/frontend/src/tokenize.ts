/** Mirror of the service analyzer: lower-case, split on anything that is
 * neither a letter nor a digit. Used only for query-input deduplication;
 * all ranking happens server side. */
export function tokenize(text: string): string[] {
  return text.toLowerCase().match(/[\p{L}\p{N}]+/gu) ?? [];
}
