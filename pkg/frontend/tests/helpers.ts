import { readFileSync } from "node:fs";

export function fixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as T;
}

/** Slice the markup for one scenario card out of a compare render. */
export function cardOf(html: string, name: string): string {
  const start = html.indexOf(`data-scenario="${name}"`);
  if (start < 0) throw new Error(`no card for ${name}`);
  const end = html.indexOf("</section>", start);
  return html.slice(start, end);
}

/** Minimal Response stand-in for the injected fetch. */
export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}
