import type { ApiClient } from "./api.js";
import type { JobRecord } from "./types.js";

export interface PollHandle {
  stop: () => void;
  done: Promise<JobRecord>;
}

/**
 * Poll a job until it leaves the queue. The server owns completion; the
 * client only re-reads the record every `intervalMs` until state is done or
 * failed. Callers may stop early (view switched away, job superseded).
 */
export function pollJob(
  client: ApiClient,
  jobId: string,
  onUpdate: (record: JobRecord) => void,
  intervalMs = 500,
): PollHandle {
  let stopped = false;
  let timer: ReturnType<typeof setTimeout> | undefined;

  const done = new Promise<JobRecord>((resolve, reject) => {
    const tick = async (): Promise<void> => {
      if (stopped) return;
      let record: JobRecord;
      try {
        record = await client.job(jobId);
      } catch (err) {
        if (!stopped) reject(err);
        return;
      }
      if (stopped) return;
      onUpdate(record);
      if (record.state === "done" || record.state === "failed") {
        resolve(record);
        return;
      }
      timer = setTimeout(tick, intervalMs);
    };
    void tick();
  });

  return {
    stop: () => {
      stopped = true;
      if (timer !== undefined) clearTimeout(timer);
    },
    done,
  };
}
