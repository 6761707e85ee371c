import sys

from src.components.verifier import run_campaign_with_slacks, slack_table_rows
from src.entity.artifact_entity import FuzzArtifact
from src.entity.config_entity import FuzzOutputConfig, TrialSpec
from src.exception import MyException, reraise_domain_error
from src.logger import logging
from src.utils.main_utils import write_csv_file, write_json_file

SLACK_TABLE_COLUMNS = ["inequality", "trial", "dim", "slack", "pass"]


class FuzzPipeline:
    def __init__(self, trial_spec: TrialSpec, output_config: FuzzOutputConfig):
        self.trial_spec = trial_spec
        self.output_config = output_config

    def run_pipeline(self) -> FuzzArtifact:
        logging.info("Entered the run_pipeline method of FuzzPipeline class")
        try:
            report, records = run_campaign_with_slacks(self.trial_spec)
            write_json_file(self.output_config.report_file_path, report.to_dict())

            slack_path = self.output_config.slack_table_file_path
            if slack_path:
                write_csv_file(slack_path, slack_table_rows(records), SLACK_TABLE_COLUMNS)

            for failure in report.failures:
                level = logging.WARNING if failure.kind == "theorem" else logging.INFO
                logging.log(level, f"{failure.kind} {failure.inequality} failed in trial {failure.trial} "
                                   f"(seed {failure.trial_seed}, slack {failure.slack!r})")
            logging.info("Exited the run_pipeline method of FuzzPipeline class")
            return FuzzArtifact(report=report, report_file_path=self.output_config.report_file_path,
                                slack_table_file_path=slack_path)

        except Exception as e:
            reraise_domain_error(e)
            raise MyException(e, sys) from e
